"""Exact sparse row reduction over Q.

Rows are ``{column: Fraction}`` dicts.  Columns are arbitrary hashables
ordered by a caller-supplied key; the pivot of a row is its *largest*
column, so with a degree-compatible key the rows whose pivot has degree
``<= d`` span exactly the part of the row space lying in degree ``<= d``.
"""
from __future__ import annotations

import os
from fractions import Fraction

DEFAULT_MAX_SPAN = 20_000


class ResourceLimitError(RuntimeError):
    """A span or basis would exceed the configured size cap."""

    def __init__(self, parameter: str, requested: int, limit: int):
        super().__init__(
            f"{parameter} needs a span of {requested} vectors, above the cap {limit} "
            "(raise FILTRA_MAX_SPAN to allow it)"
        )
        self.parameter = parameter
        self.requested = requested
        self.limit = limit


def max_span() -> int:
    raw = os.environ.get("FILTRA_MAX_SPAN")
    return int(raw) if raw else DEFAULT_MAX_SPAN


def check_span(parameter: str, requested: int) -> None:
    limit = max_span()
    if requested > limit:
        raise ResourceLimitError(parameter, requested, limit)


class RowReducer:
    """Incrementally maintained echelon basis of a row space."""

    def __init__(self, key=None):
        self._key = key
        self._pivots: dict = {}

    def __len__(self):
        return len(self._pivots)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def pivots(self):
        return list(self._pivots)

    def rows(self):
        """Echelon basis rows (pivot entry normalized to 1)."""
        return [dict(r) for r in self._pivots.values()]

    def _lead(self, row):
        return max(row, key=self._key) if self._key else max(row)

    def reduce(self, row) -> dict:
        """Reduce ``row`` until its leading column is not a pivot (or it is zero)."""
        row = {c: Fraction(v) for c, v in row.items() if v}
        pivots = self._pivots
        while row:
            lead = self._lead(row)
            prow = pivots.get(lead)
            if prow is None:
                break
            factor = row[lead]
            for c, v in prow.items():
                nv = row.get(c, 0) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        return row

    def add(self, row) -> bool:
        """Insert ``row``; return True when it enlarged the span."""
        row = self.reduce(row)
        if not row:
            return False
        lead = self._lead(row)
        inv = 1 / row[lead]
        self._pivots[lead] = {c: v * inv for c, v in row.items()}
        return True

    def contains(self, row) -> bool:
        return not self.reduce(row)


def rank(rows, key=None) -> int:
    reducer = RowReducer(key)
    for row in rows:
        reducer.add(row)
    return reducer.rank
