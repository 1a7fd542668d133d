"""The Poisson polynomial algebra P_2n and its Hamiltonian map into A_2n.

Coordinates are ``x_1..x_2n`` with ``{x_i, x_{n+i}} = 1``.  Poisson
polynomials are plain :class:`~filtra.weyl.Polynomial` objects in ``2n``
variables.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .inequalities import WEYL_FILTER_DIMENSION, commutative_subalgebra_bound
from .linalg import rank
from .weyl import DimensionMismatch, Polynomial, WeylElement, parse_polynomial


def _half(p: Polynomial) -> int:
    if p.nvars % 2:
        raise ValueError(f"Poisson polynomials need an even number of variables, got {p.nvars}")
    return p.nvars // 2


def as_poisson(p, nvars: int | None = None) -> Polynomial:
    if isinstance(p, str):
        p = parse_polynomial(p, nvars)
    elif isinstance(p, (int, Fraction)):
        p = Polynomial.constant(nvars, p)
    _half(p)
    return p


def poisson_bracket(f: Polynomial, g: Polynomial) -> Polynomial:
    """``{f, g} = sum_i (df/dx_i dg/dx_{n+i} - df/dx_{n+i} dg/dx_i)``."""
    if f.nvars != g.nvars:
        raise DimensionMismatch(f"P_{f.nvars} vs P_{g.nvars}")
    n = _half(f)
    total = Polynomial(f.nvars)
    for i in range(1, n + 1):
        total = total + f.derivative(i) * g.derivative(n + i) - f.derivative(n + i) * g.derivative(i)
    return total


def hamiltonian_weyl_image(a: Polynomial) -> WeylElement:
    """``ad(a)`` as the order-one operator ``sum (da/dx_i) d_{n+i} - (da/dx_{n+i}) d_i`` in A_2n."""
    n = _half(a)
    m = a.nvars
    terms: dict = {}

    def add(coeff_poly: Polynomial, d_index: int, sign: int):
        beta = tuple(1 if k == d_index - 1 else 0 for k in range(m))
        for alpha, c in coeff_poly.items():
            key = (alpha, beta)
            terms[key] = terms.get(key, 0) + sign * c

    for i in range(1, n + 1):
        add(a.derivative(i), n + i, 1)
        add(a.derivative(n + i), i, -1)
    return WeylElement(m, terms)


def multiplication_operator(p: Polynomial) -> WeylElement:
    zero = (0,) * p.nvars
    return WeylElement(p.nvars, {(alpha, zero): c for alpha, c in p.items()})


@dataclass(frozen=True)
class IsotropyResult:
    isotropic: bool
    pair: tuple | None = None
    bracket: Polynomial | None = None


def isotropic_check(gens) -> IsotropyResult:
    """All pairwise brackets of the generators vanish (enough for the subalgebra, by Leibniz)."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    for i, f in enumerate(gens):
        for g in gens[i + 1:]:
            b = poisson_bracket(f, g)
            if not b.is_zero():
                return IsotropyResult(False, (f, g), b)
    return IsotropyResult(True)


def _poly_rank_fraction_free(matrix) -> int:
    """Rank over the fraction field of a matrix with polynomial entries.

    Cross-multiplying elimination (``row_j <- p row_j - q row_i``) needs no
    division and preserves the rank over an integral domain.
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    found = 0
    for col in range(ncols):
        pivot = next((r for r in range(found, len(rows)) if not rows[r][col].is_zero()), None)
        if pivot is None:
            continue
        rows[found], rows[pivot] = rows[pivot], rows[found]
        p = rows[found][col]
        for r in range(found + 1, len(rows)):
            q = rows[r][col]
            if q.is_zero():
                continue
            rows[r] = [p * rows[r][c] - q * rows[found][c] for c in range(ncols)]
        found += 1
    return found


def _numeric_rank(matrix, point) -> int:
    rows = [{c: e.evaluate(point) for c, e in enumerate(row)} for row in matrix]
    return rank(rows)


def jacobian(polys, nvars: int) -> list[list[Polynomial]]:
    return [[p.derivative(j) for j in range(1, nvars + 1)] for p in polys]


def jacobian_rank(polys, nvars: int, seed: int = 0) -> int:
    """Generic rank of the Jacobian: a random evaluation certifies full rank, else exact elimination."""
    polys = list(polys)
    if not polys:
        return 0
    J = jacobian(polys, nvars)
    rng = random.Random(seed)
    point = [Fraction(rng.randint(-50, 50)) for _ in range(nvars)]
    if _numeric_rank(J, point) == min(len(polys), nvars):
        return min(len(polys), nvars)
    return _poly_rank_fraction_free(J)


def independence_check(gens) -> bool:
    """Algebraic independence (characteristic zero) via the Jacobian criterion."""
    gens = list(gens)
    if not gens:
        return True
    nvars = gens[0].nvars
    if len(gens) > nvars:
        return False
    return jacobian_rank(gens, nvars) == len(gens)


def symbol_independence_check(gens) -> bool:
    """Independence of ``a_1..a_m, ad(a_1)..ad(a_m)`` through their principal symbols.

    The symbol of ``ad(a)`` is ``sum (da/dx_i) xi_{n+i} - (da/dx_{n+i}) xi_i``, a
    polynomial in ``4n`` variables ``x_1..x_2n, xi_1..xi_2n``.
    """
    gens = list(gens)
    m = gens[0].nvars
    total = 2 * m

    def lift(p: Polynomial) -> Polynomial:
        return Polynomial(total, {alpha + (0,) * m: c for alpha, c in p.items()})

    symbols = [lift(a) for a in gens]
    for a in gens:
        image = hamiltonian_weyl_image(a)
        symbols.append(Polynomial(total, {alpha + beta: c for (alpha, beta), c in image.items()}))
    return independence_check(symbols)


@dataclass(frozen=True)
class IsotropicBoundReport:
    n: int
    generators: tuple
    count: int
    bound: Fraction
    margin: Fraction
    symbols_independent: bool

    @property
    def holds(self) -> bool:
        return self.count <= self.bound

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "generators": [str(g) for g in self.generators],
            "count": self.count,
            "bound": str(self.bound),
            "margin": str(self.margin),
            "tight": self.margin == 0,
            "symbols_independent": self.symbols_independent,
            "holds": self.holds,
        }


def isotropic_bound_report(n: int, gens) -> IsotropicBoundReport:
    """Check ``m <= n`` for ``m`` independent isotropic generators of a subalgebra of P_2n.

    The ``m`` generators and their ``m`` Hamiltonian images are ``2m`` commuting,
    algebraically independent elements of ``A_2n``, so ``2m`` is at most the
    commutative-subalgebra bound for ``GK(A_2n) = 4n`` with ``f = 1``.
    """
    gens = [as_poisson(g, 2 * n) for g in gens]
    if any(g.nvars != 2 * n for g in gens):
        raise DimensionMismatch(f"generators must live in P_{2 * n}")
    iso = isotropic_check(gens)
    if not iso.isotropic:
        f, g = iso.pair
        raise ValueError(f"not isotropic: {{{f}, {g}}} = {iso.bracket}")
    if not independence_check(gens):
        raise ValueError("generators are algebraically dependent")
    bound = commutative_subalgebra_bound(4 * n, WEYL_FILTER_DIMENSION) / 2
    return IsotropicBoundReport(
        n=n, generators=tuple(gens), count=len(gens), bound=bound,
        margin=bound - len(gens), symbols_independent=symbol_independence_check(gens),
    )
