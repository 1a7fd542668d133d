"""Bounds and verdicts for GK dimension, filter dimension, and holonomic modules of A_n."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, isqrt

from .growth import GrowthFit, fit_quasi_polynomial
from .returns import ReturnFunctionProfile

# Both the filter dimension and the left filter dimension of A_n equal 1.
WEYL_FILTER_DIMENSION = Fraction(1)
# Leading coefficient of the return function nu_F(i) = i of A_n.
WEYL_RETURN_LEADING = Fraction(1)


def _exact_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    p, r = isqrt(q.numerator), isqrt(q.denominator)
    if p * p == q.numerator and r * r == q.denominator:
        return Fraction(p, r)
    return None


@dataclass(frozen=True)
class Root:
    """The non-negative square root of an exact rational ``square``."""

    square: Fraction

    @property
    def exact(self) -> Fraction | None:
        return _exact_sqrt(self.square)

    def __str__(self):
        value = self.exact
        return str(value) if value is not None else f"sqrt({self.square})"

    def ge(self, x) -> bool:
        x = Fraction(x)
        return x <= 0 or self.square >= x * x

    def le(self, x) -> bool:
        x = Fraction(x)
        return x >= 0 and self.square <= x * x


def frac_sum(d) -> Fraction:
    d = Fraction(d)
    return d + max(d, Fraction(1))


def first_filter_bound(gk_algebra, d) -> Fraction:
    """Lower bound ``GK(A) / (d + max(d, 1))`` for GK of nonzero modules (and h_A)."""
    return Fraction(gk_algebra) / frac_sum(d)


def second_filter_bound(gk, d) -> Fraction:
    """``GK (1 - 1/(d + max(d, 1)))``, the Krull-dimension bound."""
    gk, d = Fraction(gk), Fraction(d)
    if gk <= 0 or d < 0:
        raise ValueError("need GK > 0 and d >= 0")
    return gk * (1 - 1 / frac_sum(d))


def commutative_subalgebra_bound(gk, f) -> Fraction:
    """``GK (1 - 1/(f + max(f, 1)))``, bounding GK of commutative subalgebras."""
    return second_filter_bound(gk, f)


def l_prime(L, d) -> Fraction:
    L, d = Fraction(L), Fraction(d)
    if d > 1:
        return L
    if d == 1:
        return L + 1
    return Fraction(1)


def length_constant(l_algebra, L, d, h) -> Root:
    """``c_A = sqrt(l(A) / (L(A) L'(A))^h)``."""
    return Root(Fraction(l_algebra) / (Fraction(L) * l_prime(L, d)) ** h)


@dataclass(frozen=True)
class WeylConstants:
    n: int
    gk: int
    filter_dimension: Fraction
    holonomic_number: int
    l_algebra: Fraction
    L: Fraction
    L_prime: Fraction
    c_A: Root

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "gk": self.gk,
            "filter_dimension": str(self.filter_dimension),
            "holonomic_number": self.holonomic_number,
            "l_algebra": str(self.l_algebra),
            "L": str(self.L),
            "L_prime": str(self.L_prime),
            "c_A": str(self.c_A),
            "c_A_squared": str(self.c_A.square),
        }


def weyl_constants(n: int) -> WeylConstants:
    """Constants of A_n: dim A_i = C(i+2n, 2n) has leading coefficient 1/(2n)!."""
    l_alg = Fraction(1, factorial(2 * n))
    d = WEYL_FILTER_DIMENSION
    L = WEYL_RETURN_LEADING
    return WeylConstants(
        n=n, gk=2 * n, filter_dimension=d, holonomic_number=n, l_algebra=l_alg,
        L=L, L_prime=l_prime(L, d), c_A=length_constant(l_alg, L, d, n),
    )


# --------------------------------------------------------------------------
# Verdicts


@dataclass(frozen=True)
class Verdict:
    name: str
    subject: str
    holds: bool | None
    lhs: object = None
    rhs: object = None
    relation: str = ">="
    detail: str = ""

    @property
    def falsification(self) -> bool:
        return self.holds is False

    @property
    def skipped(self) -> bool:
        return self.holds is None

    def text(self) -> str:
        if self.holds is None:
            return f"skipped ({self.detail})"
        word = "holds" if self.holds else "FALSIFIED"
        out = f"{word} ({self.lhs} {self.relation} {self.rhs})"
        return f"{out}, {self.detail}" if self.detail else out

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "subject": self.subject,
            "holds": self.holds,
            "lhs": None if self.lhs is None else str(self.lhs),
            "relation": self.relation,
            "rhs": None if self.rhs is None else str(self.rhs),
            "detail": self.detail,
            "verdict": self.text(),
        }


def _skip_reason(fit: GrowthFit) -> str | None:
    if fit.zero_module:
        return "zero module"
    if not fit.is_exact:
        return f"unstable fit: {fit.reason or 'no stable difference row'}"
    return None


def holonomic_classify(n: int, fit: GrowthFit) -> tuple[bool, int]:
    """``(degree == n, degree - n)``; holonomic modules have GK equal to the holonomic number n."""
    reason = _skip_reason(fit)
    if reason:
        raise ValueError(f"cannot classify: {reason}")
    return fit.degree == n, fit.degree - n


def first_filter_report(n: int, fits, names=None, d=WEYL_FILTER_DIMENSION) -> list[Verdict]:
    """Check ``GK(M) >= 2n / (d + max(d, 1))`` per module; with ``d = 1`` this is Bernstein's ``GK(M) >= n``."""
    bound = first_filter_bound(2 * n, d)
    out = []
    for idx, fit in enumerate(fits):
        name = names[idx] if names else (fit.source or f"module {idx}")
        reason = _skip_reason(fit)
        if reason:
            out.append(Verdict("first-filter", name, None, detail=reason))
            continue
        holonomic, margin = holonomic_classify(n, fit)
        detail = "holonomic" if holonomic else f"not holonomic (margin {margin})"
        if not fit.exact_data:
            detail += ", dimension data are upper bounds"
        out.append(Verdict("first-filter", name, Fraction(fit.degree) >= bound, fit.degree, bound, ">=", detail))
    return out


@dataclass(frozen=True)
class LengthBounds:
    """``length(M) <= l(M)/c_A`` and ``length(M) <= e(M) k^h`` for a holonomic module."""

    by_leading_coefficient: Root
    by_multiplicity: Fraction
    c_A: Root
    leading_coefficient: Fraction
    multiplicity: Fraction

    def admits(self, length: int) -> bool:
        return self.by_leading_coefficient.ge(length) and length <= self.by_multiplicity

    def to_json(self) -> dict:
        return {
            "bound_lc": str(self.by_leading_coefficient),
            "bound_lc_squared": str(self.by_leading_coefficient.square),
            "bound_mult": str(self.by_multiplicity),
            "c_A": str(self.c_A),
            "c_A_squared": str(self.c_A.square),
            "leading_coefficient": str(self.leading_coefficient),
            "multiplicity": str(self.multiplicity),
        }


def length_bounds(n: int, fit: GrowthFit, k: int = 1) -> LengthBounds:
    holonomic, margin = holonomic_classify(n, fit)
    if not holonomic:
        raise ValueError(f"length bounds need a holonomic module (GK - n = {margin})")
    const = weyl_constants(n)
    lc = fit.leading_coefficient
    return LengthBounds(
        by_leading_coefficient=Root(lc * lc / const.c_A.square),
        by_multiplicity=fit.multiplicity * Fraction(k) ** const.holonomic_number,
        c_A=const.c_A,
        leading_coefficient=lc,
        multiplicity=fit.multiplicity,
    )


# --------------------------------------------------------------------------
# Filter-dimension estimates


@dataclass(frozen=True)
class FilterDimensionReport:
    target: str
    fd_lower: Fraction | None
    fd_upper: Fraction | None
    exact: bool
    verdicts: tuple = field(default_factory=tuple)
    notes: tuple = field(default_factory=tuple)

    @property
    def estimate(self) -> Fraction | None:
        return self.fd_lower if self.exact else None

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "fd_lower": None if self.fd_lower is None else str(self.fd_lower),
            "fd_upper": None if self.fd_upper is None else str(self.fd_upper),
            "exact": self.exact,
            "verdicts": [v.to_json() for v in self.verdicts],
            "notes": list(self.notes),
        }


def _degree_of(values) -> Fraction | None:
    room = len(values) - 2
    if room < 0 or any(v is None for v in values):
        return None
    if all(v == 0 for v in values):
        return Fraction(0)
    fit = fit_quasi_polynomial(list(values), 1, max_degree=min(6, room))
    return Fraction(fit.degree) if fit.is_exact else None


def filter_dimension_consistency(
    profile: ReturnFunctionProfile, algebra_gk: int | None = None, module_gk=None
) -> FilterDimensionReport:
    """Estimate the filter dimension as the degree of the profile and cross-check it.

    Checks ``fd >= 1/2``; for algebra profiles of A_n also that the estimate
    equals the proved value 1; for simple-module profiles with ``module_gk``,
    that ``GK(M) <= GK(A) fd(M)``.
    """
    lo = _degree_of(profile.lower_values())
    hi = _degree_of(profile.upper_values())
    exact = profile.is_exact and lo is not None and lo == hi
    verdicts = []
    notes = []
    if lo is None and hi is None:
        notes.append("profile too short or unstable for a degree estimate")
        return FilterDimensionReport(profile.target, None, None, False, (), tuple(notes))
    if not exact:
        notes.append("profile entries are intervals; estimate is an interval")
    best = hi if hi is not None else lo
    if best is not None:
        verdicts.append(Verdict("fd-at-least-half", profile.target, best >= Fraction(1, 2), best, Fraction(1, 2)))
    if profile.kind == "algebra" and exact:
        verdicts.append(Verdict(
            "fd-equals-proved-value", profile.target, lo == WEYL_FILTER_DIMENSION, lo,
            WEYL_FILTER_DIMENSION, "==",
        ))
    if profile.kind == "module" and module_gk is not None and algebra_gk is not None and best is not None:
        if profile.cyclic_restricted:
            notes.append("module not known to be simple; GK(M) <= GK(A) fd(M) not checked")
        else:
            verdicts.append(Verdict(
                "gk-at-most-gk-times-fd", profile.target, Fraction(module_gk) <= algebra_gk * best,
                module_gk, Fraction(algebra_gk) * best, "<=",
            ))
    return FilterDimensionReport(profile.target, lo, hi, exact, tuple(verdicts), tuple(notes))


# --------------------------------------------------------------------------
# Aggregate report


@dataclass
class ModuleRecord:
    name: str
    fit: GrowthFit
    verdict: Verdict
    holonomic: bool | None = None
    bounds: LengthBounds | None = None
    true_length: int | None = None

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "gk_estimate": self.fit.degree,
            "leading_coefficient": None if self.fit.leading_coefficient is None else str(self.fit.leading_coefficient),
            "multiplicity": None if self.fit.multiplicity is None else str(self.fit.multiplicity),
            "holonomic": self.holonomic,
            "verdict": self.verdict.to_json(),
        }
        if self.bounds is not None:
            out["length_bounds"] = self.bounds.to_json()
        if self.true_length is not None:
            out["true_length"] = self.true_length
            out["length_within_bounds"] = self.bounds.admits(self.true_length) if self.bounds else None
        return out


@dataclass
class InequalityReport:
    n: int
    constants: WeylConstants
    modules: list = field(default_factory=list)
    formulas: dict = field(default_factory=dict)

    @property
    def falsified(self) -> bool:
        if any(m.verdict.falsification for m in self.modules):
            return True
        return any(
            m.bounds is not None and m.true_length is not None and not m.bounds.admits(m.true_length)
            for m in self.modules
        )

    def to_json(self) -> dict:
        return {
            "constants": self.constants.to_json(),
            "modules": [m.to_json() for m in self.modules],
            "formulas": {k: str(v) for k, v in self.formulas.items()},
            "falsified": self.falsified,
        }

    def table(self) -> str:
        lines = [
            f"A_{self.n}: GK = {self.constants.gk}, d = {self.constants.filter_dimension}, "
            f"h = {self.constants.holonomic_number}, c_A = {self.constants.c_A}",
            "| module | GK | e | verdict |",
            "|---|---|---|---|",
        ]
        for m in self.modules:
            lines.append(f"| {m.name} | {m.fit.degree} | {m.fit.multiplicity} | {m.verdict.text()} |")
        return "\n".join(lines)


def inequality_report(n: int, fits, names=None, true_lengths=None, k: int = 1) -> InequalityReport:
    const = weyl_constants(n)
    report = InequalityReport(n, const)
    verdicts = first_filter_report(n, fits, names)
    for idx, (fit, verdict) in enumerate(zip(fits, verdicts)):
        record = ModuleRecord(verdict.subject, fit, verdict)
        if not verdict.skipped:
            record.holonomic, _ = holonomic_classify(n, fit)
            if record.holonomic:
                record.bounds = length_bounds(n, fit, k)
                if true_lengths is not None:
                    record.true_length = true_lengths[idx]
        report.modules.append(record)
    report.formulas = {
        "first_filter_bound": first_filter_bound(2 * n, const.filter_dimension),
        "second_filter_bound": second_filter_bound(2 * n, const.filter_dimension),
        "commutative_subalgebra_bound": commutative_subalgebra_bound(2 * n, const.filter_dimension),
    }
    return report
