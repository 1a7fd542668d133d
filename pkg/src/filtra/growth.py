"""Quasi-polynomial fits of dimension sequences by exact finite differences."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .modules import DimensionSequence, ModuleRealization, module_dimension_sequence

DEFAULT_MAX_DEGREE = 6

EXACT_FIT = "exact-fit"
UNSTABLE = "unstable"


def differences(values) -> list:
    return [b - a for a, b in zip(values, values[1:])]


def poly_eval(coeffs, x) -> Fraction:
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


def _poly_mul_linear(coeffs, root):
    """Multiply the polynomial by ``(t - root)``."""
    out = [Fraction(0)] * (len(coeffs) + 1)
    for k, c in enumerate(coeffs):
        out[k + 1] += c
        out[k] -= root * c
    return out


def interpolate(points) -> tuple:
    """Lagrange interpolation through ``(x, y)`` pairs; ascending coefficients."""
    points = [(Fraction(x), Fraction(y)) for x, y in points]
    result = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = _poly_mul_linear(basis, xj)
                denom *= xi - xj
        scale = yi / denom
        for k, c in enumerate(basis):
            result[k] += c * scale
    while len(result) > 1 and result[-1] == 0:
        result.pop()
    return tuple(result)


@dataclass(frozen=True)
class GrowthFit:
    """Eventual quasi-polynomial ``dim M_i = gamma_{i mod k}(i)``.

    ``polynomials[j]`` holds ascending coefficients of ``gamma_j`` in the
    variable ``i``.  ``multiplicity = degree! * leading_coefficient``.
    """

    period: int
    polynomials: tuple
    degree: int | None
    leading_coefficient: Fraction | None
    multiplicity: Fraction | None
    fit_from: int | None
    status: str
    zero_module: bool = False
    exact_data: bool = True
    window: int = 4
    source: str = ""
    reason: str = ""

    @property
    def is_exact(self) -> bool:
        return self.status == EXACT_FIT

    def evaluate(self, i: int) -> Fraction:
        if not self.polynomials:
            raise ValueError("fit has no polynomials")
        return poly_eval(self.polynomials[i % self.period], i)

    def values(self, length: int) -> list[int]:
        return [int(self.evaluate(i)) for i in range(length)]

    def denominators_ok(self) -> bool:
        """Every coefficient times ``k^d d!`` is an integer."""
        if self.degree is None:
            return False
        scale = self.period ** self.degree * factorial(self.degree)
        return all((c * scale).denominator == 1 for poly in self.polynomials for c in poly)

    def to_json(self) -> dict:
        def q(x):
            return None if x is None else str(x)

        return {
            "period": self.period,
            "degree": self.degree,
            "leading_coefficient": q(self.leading_coefficient),
            "multiplicity": q(self.multiplicity),
            "polynomials": [[str(c) for c in poly] for poly in self.polynomials],
            "fit_from": self.fit_from,
            "status": self.status,
            "zero_module": self.zero_module,
            "exact_data": self.exact_data,
            "window": self.window,
            "source": self.source,
            "reason": self.reason,
        }


def _fit_class(sub, window: int, max_degree: int):
    """Minimal degree whose difference row is constant on the last ``window`` entries."""
    row = list(sub)
    for d in range(max_degree + 1):
        if len(row) < window:
            return None
        tail = row[-window:]
        if all(v == tail[0] for v in tail):
            return d
        row = differences(row)
    return None


def fit_quasi_polynomial(seq, k: int = 1, max_degree: int = DEFAULT_MAX_DEGREE) -> GrowthFit:
    """Fit ``k`` polynomials, one per residue class mod ``k``, to the tail of ``seq``."""
    if k < 1:
        raise ValueError("period must be positive")
    if isinstance(seq, DimensionSequence):
        values, exact, source = list(seq.values), seq.all_exact, seq.source
    else:
        values, exact, source = list(seq), True, ""
    if len(values) < k * (max_degree + 2):
        raise ValueError(
            f"sequence of length {len(values)} is too short for period {k} and degree bound {max_degree}"
        )
    window = max(4, 2 * k)
    if all(v == 0 for v in values):
        return GrowthFit(
            k, (), None, None, None, None, UNSTABLE, zero_module=True,
            exact_data=exact, window=window, source=source, reason="zero module",
        )

    polys = []
    for j in range(k):
        sub = values[j::k]
        d = _fit_class(sub, window, max_degree)
        if d is None:
            return GrowthFit(
                k, tuple(polys), None, None, None, None, UNSTABLE, exact_data=exact,
                window=window, source=source,
                reason=f"residue class {j} did not stabilize within degree {max_degree}",
            )
        xs = [j + k * t for t in range(len(sub))]
        pts = list(zip(xs, sub))[-(d + 1):]
        polys.append(interpolate(pts))

    degrees = {len(p) - 1 for p in polys}
    leads = {p[-1] for p in polys}
    fit_from = 0
    for i in range(len(values) - 1, -1, -1):
        if poly_eval(polys[i % k], i) != values[i]:
            fit_from = i + 1
            break
    if len(degrees) != 1 or len(leads) != 1:
        return GrowthFit(
            k, tuple(polys), None, None, None, fit_from, UNSTABLE, exact_data=exact,
            window=window, source=source, reason="residue classes disagree on degree or leading coefficient",
        )
    d = degrees.pop()
    lc = leads.pop()
    return GrowthFit(
        k, tuple(polys), d, lc, lc * factorial(d), fit_from, EXACT_FIT,
        exact_data=exact, window=window, source=source,
    )


def growth_profile(
    module: ModuleRealization, i_max: int, k: int = 1, max_degree: int = DEFAULT_MAX_DEGREE
) -> GrowthFit:
    """Fit the dimension sequence of ``module``; the degree estimates GK(M)."""
    return fit_quasi_polynomial(module_dimension_sequence(module, i_max), k, max_degree)
