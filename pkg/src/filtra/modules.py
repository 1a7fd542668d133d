"""Finitely generated A_n-modules and the dimensions of their standard filtrations.

Two kinds of realization are supported:

* :class:`ConcreteModule` -- an explicit basis with the action of every
  canonical generator; dimensions of ``M_i = A_i M_0`` are exact.
* :class:`CyclicQuotient` -- ``A_n / sum_k A_n g_k``.  The left ideal is
  approximated by products ``a * g_k`` with ``deg a <= N - deg g_k`` for a
  cutoff ``N``, which can only under-count the ideal, so reported module
  dimensions are upper bounds unless flagged stabilized.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Hashable, Union

from .linalg import RowReducer, check_span
from .weyl import (
    WeylElement,
    filtration_basis,
    filtration_degree,
    filtration_dimension,
    grlex_key,
    monomials_of_degree,
    mul,
    parse,
    render,
)

Vector = dict  # basis key -> Fraction


@dataclass(frozen=True, eq=False)
class ConcreteModule:
    """Explicit realization of an A_n-module.

    ``action(g, key)`` returns the vector ``a_g . e_key`` for the canonical
    generator ``a_g`` (1..n are X's, n+1..2n are d's).  ``generating`` is a
    basis of the generating subspace ``M_0``.
    """

    n: int
    action: Callable[[int, Hashable], Vector]
    generating: tuple
    order: Callable = field(default=lambda key: key)
    description: str = "concrete module"
    simple: bool = False
    degree: Callable | None = None
    graded_keys: Callable[[int], list] | None = None
    return_cap: Callable[[int], int] | None = None
    designated: Callable[[int], Vector] | None = None

    def act(self, g: int, vector: Vector) -> Vector:
        out: dict = {}
        for key, c in vector.items():
            for k2, c2 in self.action(g, key).items():
                out[k2] = out.get(k2, 0) + c * c2
        return {k: v for k, v in out.items() if v}

    def apply(self, u: WeylElement, vector: Vector) -> Vector:
        """Action of a Weyl element: ``X^alpha d^beta v`` applies the d's first."""
        n = self.n
        out: dict = {}
        for (alpha, beta), c in u.items():
            w = dict(vector)
            for i, e in enumerate(beta):
                for _ in range(e):
                    w = self.act(n + i + 1, w)
            for i, e in enumerate(alpha):
                for _ in range(e):
                    w = self.act(i + 1, w)
            for k, v in w.items():
                out[k] = out.get(k, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def vector_degree(self, vector: Vector):
        if self.degree is None:
            raise ValueError(f"{self.description} has no grading")
        return max((self.degree(k) for k in vector), default=float("-inf"))


@dataclass(frozen=True)
class CyclicQuotient:
    """``A_n / (A_n g_1 + ... + A_n g_t)`` with ideal cutoff ``N``; ``M_0`` is the image of K."""

    n: int
    generators: tuple
    cutoff: int
    description: str = "cyclic quotient"


ModuleRealization = Union[ConcreteModule, CyclicQuotient]


@dataclass(frozen=True)
class DimensionSequence:
    values: tuple
    exact: tuple
    source: str = ""

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @property
    def all_exact(self) -> bool:
        return all(self.exact)


# --------------------------------------------------------------------------
# Concrete realizations


def _shift(key, i, delta):
    return key[:i] + (key[i] + delta,) + key[i + 1:]


def _twisted_name(n: int, shifts) -> str:
    gens = [render(WeylElement.d(n, i + 1) - c) for i, c in enumerate(shifts)]
    return f"A_{n}/({', '.join(gens)})"


def twisted_polynomial_module(n: int, shifts=None, description: str | None = None) -> ConcreteModule:
    """``K[x_1..x_n]`` with ``X_i`` multiplying and ``d_i`` acting as ``d/dx_i + c_i``.

    This realizes ``A_n / sum_i A_n (d_i - c_i)`` (the module ``K[x] e^{c.x}``).
    With all shifts zero it is the polynomial module ``P_n``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    shifts = tuple(Fraction(c) for c in (shifts or (0,) * n))
    if len(shifts) != n:
        raise ValueError("one shift per variable")

    def action(g, key):
        if g <= n:
            return {_shift(key, g - 1, 1): Fraction(1)}
        i = g - n - 1
        out = {}
        if key[i]:
            out[_shift(key, i, -1)] = Fraction(key[i])
        if shifts[i]:
            out[key] = shifts[i]
        return out

    def designated(i):
        return {(i,) + (0,) * (n - 1): Fraction(1)}

    plain = not any(shifts)
    return ConcreteModule(
        n=n,
        action=action,
        generating=({(0,) * n: Fraction(1)},),
        order=grlex_key,
        description=description or (f"P_{n}" if plain else _twisted_name(n, shifts)),
        simple=True,
        degree=sum,
        graded_keys=lambda i: monomials_of_degree(n, i),
        return_cap=(lambda i: i) if plain else None,
        designated=designated,
    )


def polynomial_module(n: int) -> ConcreteModule:
    """``P_n = K[x_1..x_n] = A_n / (A_n d_1 + ... + A_n d_n)`` with ``M_0 = K``."""
    return twisted_polynomial_module(n)


def direct_sum(first: ConcreteModule, second: ConcreteModule) -> ConcreteModule:
    if first.n != second.n:
        raise ValueError("summands must be modules over the same A_n")

    def action(g, key):
        side, inner = key
        src = first if side == 0 else second
        return {(side, k): c for k, c in src.action(g, inner).items()}

    gens = tuple({(0, k): c for k, c in v.items()} for v in first.generating) + tuple(
        {(1, k): c for k, c in v.items()} for v in second.generating
    )
    degree = None
    graded = None
    if first.degree and second.degree:
        degree = lambda key: (first if key[0] == 0 else second).degree(key[1])  # noqa: E731
    if first.graded_keys and second.graded_keys:
        graded = lambda i: [(0, k) for k in first.graded_keys(i)] + [  # noqa: E731
            (1, k) for k in second.graded_keys(i)
        ]
    return ConcreteModule(
        n=first.n,
        action=action,
        generating=gens,
        order=lambda key: (key[0], first.order(key[1]) if key[0] == 0 else second.order(key[1])),
        description=f"{first.description} + {second.description}",
        simple=False,
        degree=degree,
        graded_keys=graded,
    )


def weyl_relation_defects(module: ConcreteModule, keys) -> list:
    """Return ``(g, h, key)`` triples where ``[a_g, a_h] e_key`` is wrong."""
    n = module.n
    bad = []
    for key in keys:
        e = {key: Fraction(1)}
        for g in range(1, 2 * n + 1):
            for h in range(g + 1, 2 * n + 1):
                gh = module.act(g, module.act(h, e))
                hg = module.act(h, module.act(g, e))
                comm = dict(gh)
                for k, v in hg.items():
                    comm[k] = comm.get(k, 0) - v
                comm = {k: v for k, v in comm.items() if v}
                # only [d_i, X_i] = 1 is nonzero; with g < h that is [X_i, d_i] = -1
                expected = {key: Fraction(-1)} if h == g + n else {}
                if comm != expected:
                    bad.append((g, h, key))
    return bad


def span_closure(module: ConcreteModule, start, steps: int):
    """Echelon bases of ``A_j W`` for ``j = 0..steps`` where ``W = span(start)``.

    Yields ``(j, reducer)``; the reducer is shared and grows in place.
    """
    reducer = RowReducer(module.order)
    frontier = [dict(v) for v in start if v and reducer.add(v)]
    yield 0, reducer
    for j in range(1, steps + 1):
        new = []
        for v in frontier:
            for g in range(1, 2 * module.n + 1):
                w = module.act(g, v)
                if w and reducer.add(w):
                    new.append(w)
        check_span(f"module span at degree {j}", reducer.rank)
        frontier = new
        yield j, reducer


# --------------------------------------------------------------------------
# Cyclic quotients


def cyclic_quotient_module(n: int, generators, cutoff: int) -> CyclicQuotient:
    gens = tuple(parse(g, n) if isinstance(g, str) else g for g in generators)
    for g in gens:
        if g.is_zero():
            raise ValueError("ideal generators must be nonzero")
        if g.n != n:
            raise ValueError(f"generator {g} is not in A_{n}")
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    text = ", ".join(str(g) for g in gens) or "0"
    return CyclicQuotient(n=n, generators=gens, cutoff=cutoff, description=f"A_{n}/({text})")


def _weyl_order(key):
    alpha, beta = key
    return grlex_key(alpha + beta)


@lru_cache(maxsize=256)
def _ideal_piece_counts(generators: tuple, cutoff: int) -> tuple:
    """``counts[d] = dim(span{a g_k : deg a <= cutoff - deg g_k} cap A_d)`` for d <= cutoff."""
    if cutoff < 0:
        return ()
    reducer = RowReducer(_weyl_order)
    total = sum(filtration_dimension(g.n, cutoff - filtration_degree(g)) for g in generators)
    check_span(f"ideal products at cutoff {cutoff}", total)
    for g in generators:
        room = cutoff - filtration_degree(g)
        if room < 0:
            continue
        for a in filtration_basis(g.n, room):
            reducer.add(dict(mul(a, g).items()))
    counts = [0] * (cutoff + 1)
    for alpha, beta in reducer.pivots():
        deg = sum(alpha) + sum(beta)
        if deg <= cutoff:
            counts[deg] += 1
    running = 0
    for d in range(cutoff + 1):
        running += counts[d]
        counts[d] = running
    return tuple(counts)


def _count_at(generators, d, cutoff) -> int:
    counts = _ideal_piece_counts(generators, cutoff)
    if not counts:
        return 0
    return counts[min(d, cutoff)]


def ideal_piece_dimension(generators, d: int, cutoff: int) -> tuple[int, bool]:
    """Cutoff approximation of ``dim(I cap A_d)`` and whether it is unchanged from ``cutoff - 1``."""
    if d > cutoff:
        raise ValueError(f"cutoff {cutoff} is below the requested degree {d}")
    gens = tuple(generators)
    if not gens:
        return 0, True
    value = _count_at(gens, d, cutoff)
    if cutoff == 0:
        return value, False
    return value, value == _count_at(gens, d, cutoff - 1)


def random_cyclic_quotient(n: int, rng: random.Random, cutoff: int, max_degree: int = 2) -> CyclicQuotient:
    """``A_n / A_n g`` for a random ``g`` of degree 1..max_degree, coefficients in ``{-3..3}``.

    The top-degree part of ``g`` is forced nonzero, so the quotient is a
    nonzero proper module.
    """
    degree = rng.randint(1, max_degree)
    terms = {}
    for d in range(degree + 1):
        for vec in monomials_of_degree(2 * n, d):
            c = rng.randint(-3, 3)
            if c:
                terms[(vec[:n], vec[n:])] = c
    top = [v for v in monomials_of_degree(2 * n, degree)]
    if not any(sum(a) + sum(b) == degree for a, b in terms):
        vec = rng.choice(top)
        terms[(vec[:n], vec[n:])] = rng.choice((-3, -2, -1, 1, 2, 3))
    return cyclic_quotient_module(n, [WeylElement(n, terms)], cutoff)


# --------------------------------------------------------------------------
# Dimension sequences


def module_dimension_sequence(module: ModuleRealization, i_max: int) -> DimensionSequence:
    if isinstance(module, CyclicQuotient):
        if i_max > module.cutoff:
            raise ValueError(f"i_max {i_max} exceeds the cutoff {module.cutoff}")
        values, flags = [], []
        for i in range(i_max + 1):
            ideal, stable = ideal_piece_dimension(module.generators, i, module.cutoff)
            values.append(filtration_dimension(module.n, i) - ideal)
            flags.append(stable)
        return DimensionSequence(tuple(values), tuple(flags), f"{module.description}, cutoff {module.cutoff}")
    values = [reducer.rank for _, reducer in span_closure(module, module.generating, i_max)]
    return DimensionSequence(tuple(values), (True,) * len(values), module.description)


def algebra_dimension_sequence(n: int, i_max: int) -> DimensionSequence:
    values = tuple(filtration_dimension(n, i) for i in range(i_max + 1))
    return DimensionSequence(values, (True,) * len(values), f"A_{n}")


# --------------------------------------------------------------------------
# Module description files


def load_module(description) -> ModuleRealization:
    """Build a realization from a JSON description (dict, path, or JSON text).

    ``{"n": 1, "kind": "cyclic" | "polynomial", "generators": [...], "cutoff": N}``;
    ``{"kind": "sum", "summands": [...]}`` builds a direct sum of concrete summands.
    """
    if isinstance(description, str):
        text = description
        if not text.lstrip().startswith("{"):
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        description = json.loads(text)
    kind = description.get("kind", "cyclic")
    if kind == "polynomial":
        return polynomial_module(int(description["n"]))
    if kind == "twisted":
        return twisted_polynomial_module(int(description["n"]), description.get("shifts"))
    if kind == "sum":
        parts = [load_module(part) for part in description["summands"]]
        if any(not isinstance(p, ConcreteModule) for p in parts):
            raise ValueError("direct sums need concrete summands")
        total = parts[0]
        for part in parts[1:]:
            total = direct_sum(total, part)
        return total
    if kind == "cyclic":
        n = int(description["n"])
        return cyclic_quotient_module(n, description.get("generators", []), int(description.get("cutoff", 10)))
    raise ValueError(f"unknown module kind {kind!r}")
