"""Return functions of A_n and of concrete A_n-modules.

The return function quantifies over every nonzero element of ``A_i`` (or
every generating subspace inside ``M_i``), which no finite computation can
cover over an infinite field.  Profiles are therefore intervals:

* lower bounds come from specific elements whose return index is computed
  exactly (``X_1^i``, random samples) and from the constant-coefficient
  probe, which certifies that ``1`` is out of reach below degree ``i``;
* upper bounds come from the degree-lowering argument: every generator
  commutator drops the filtration degree and only scalars commute with
  everything, so an ad-chain of length ``<= deg a`` reaches a nonzero scalar.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .linalg import RowReducer, check_span
from .modules import ConcreteModule, span_closure
from .weyl import (
    WeylElement,
    ad_generator,
    filtration_basis,
    filtration_degree,
    filtration_dimension,
    generator_name,
    grlex_key,
    monomials_of_degree,
    mul,
)

EXACT = "exact"
BOUND_REACHED = "bound-reached"
SAMPLE_COEFFICIENTS = (-3, -2, -1, 1, 2, 3)


class ProbeFailure(RuntimeError):
    """A lower-bound verification found a counterexample."""


def _weyl_order(key):
    alpha, beta = key
    return grlex_key(alpha + beta)


def _one(n):
    zero = (0,) * n
    return {(zero, zero): Fraction(1)}


# --------------------------------------------------------------------------
# Ad-chain certificates


@dataclass(frozen=True)
class AdChainCertificate:
    element: WeylElement
    chain: tuple
    scalar: Fraction

    def replay(self) -> WeylElement:
        u = self.element
        for g in self.chain:
            u = ad_generator(g, u)
        return u

    def verify(self) -> bool:
        return self.replay() == WeylElement.scalar(self.element.n, self.scalar) and self.scalar != 0

    def encode(self) -> str:
        names = [f"ad {generator_name(self.element.n, g)}" for g in self.chain]
        return " > ".join(names + [str(self.scalar)])

    def expand(self) -> list[tuple[Fraction, WeylElement, WeylElement]]:
        """Terms ``(c, L, R)`` with ``sum c * L a R == 1``, each ``L, R`` of degree <= chain length."""
        n = self.element.n
        one = WeylElement.scalar(n)
        terms = [(Fraction(1), one, one)]
        for g in self.chain:
            a_g = WeylElement.generator(n, g)
            nxt = []
            for c, left, right in terms:
                nxt.append((c, mul(a_g, left), right))
                nxt.append((-c, left, mul(right, a_g)))
            terms = nxt
        inv = 1 / self.scalar
        return [(c * inv, left, right) for c, left, right in terms]


def ad_chain_witness(a: WeylElement) -> AdChainCertificate:
    """Greedy chain: apply the first generator whose commutator is nonzero until a scalar remains."""
    if a.is_zero():
        raise ValueError("the zero element has no return index")
    n = a.n
    chain = []
    u = a
    while not u.is_scalar():
        for g in range(1, 2 * n + 1):
            v = ad_generator(g, u)
            if not v.is_zero():
                break
        else:  # pragma: no cover - would contradict Z(A_n) = K
            raise ProbeFailure(f"non-scalar {u} commutes with every generator")
        if filtration_degree(v) >= filtration_degree(u):  # pragma: no cover
            raise ProbeFailure(f"ad {generator_name(n, g)} did not lower the degree of {u}")
        chain.append(g)
        u = v
    return AdChainCertificate(a, tuple(chain), u.constant_coefficient())


# --------------------------------------------------------------------------
# Per-element return indices


@dataclass(frozen=True)
class ReturnProbe:
    element: object
    index: int | None
    j_max: int
    status: str
    stabilized: bool = True


def element_return_index_algebra(a: WeylElement, j_max: int) -> ReturnProbe:
    """Least ``j <= j_max`` with ``1`` in the span of ``x a y`` for ``x, y`` in ``A_j``."""
    if a.is_zero():
        raise ValueError("the zero element has no return index")
    n = a.n
    check_span("two-sided span A_j a A_j", filtration_dimension(n, j_max) ** 2)
    reducer = RowReducer(_weyl_order)
    one = _one(n)
    by_degree: list[list[WeylElement]] = []
    right_products: dict = {}
    for j in range(j_max + 1):
        by_degree.append(filtration_basis_of_degree(n, j))
        lower = [m for level in by_degree[:-1] for m in level]
        pairs = [(x, y) for x in by_degree[-1] for y in lower + by_degree[-1]]
        pairs += [(x, y) for x in lower for y in by_degree[-1]]
        for x, y in pairs:
            ay = right_products.get(y)
            if ay is None:
                ay = right_products[y] = mul(a, y)
            reducer.add(dict(mul(x, ay).items()))
        if reducer.contains(one):
            return ReturnProbe(a, j, j_max, EXACT)
    return ReturnProbe(a, None, j_max, BOUND_REACHED)


def element_left_return_index(a: WeylElement, j_max: int, cutoff: int) -> ReturnProbe:
    """Cutoff approximation of the left return index: ``1`` in ``A_N a A_j``.

    ``stabilized`` reports whether the cutoff ``N - 1`` gives the same index.
    """
    if a.is_zero():
        raise ValueError("the zero element has no return index")

    def index_at(N):
        if N < 0:
            return None
        n = a.n
        check_span("left span A_N a A_j", filtration_dimension(n, N) * filtration_dimension(n, j_max))
        left = filtration_basis(n, N)
        reducer = RowReducer(_weyl_order)
        for j in range(j_max + 1):
            for y in filtration_basis_of_degree(n, j):
                ay = mul(a, y)
                for x in left:
                    reducer.add(dict(mul(x, ay).items()))
            if reducer.contains(_one(n)):
                return j
        return None

    found = index_at(cutoff)
    previous = index_at(cutoff - 1)
    status = EXACT if found is not None else BOUND_REACHED
    return ReturnProbe(a, found, j_max, status, stabilized=found == previous)


def element_return_index_module(module: ConcreteModule, u, j_max: int, generating=None) -> ReturnProbe:
    """Least ``j`` with ``M_0`` inside ``A_j u``."""
    if not u:
        raise ValueError("the zero vector has no return index")
    targets = list(generating if generating is not None else module.generating)
    for j, reducer in span_closure(module, [u], j_max):
        if all(reducer.contains(t) for t in targets):
            return ReturnProbe(u, j, j_max, EXACT)
    return ReturnProbe(u, None, j_max, BOUND_REACHED)


def filtration_basis_of_degree(n: int, j: int) -> list[WeylElement]:
    return [WeylElement.monomial(v[:n], v[n:]) for v in monomials_of_degree(2 * n, j)]


# --------------------------------------------------------------------------
# Lower-bound probes


def lower_bound_probe(n: int, i: int) -> int:
    """Certify ``nu_F(i) >= i`` via ``X_1^i``.

    Checks every basis pair ``x, y`` of ``A_{i-1}``: ``x X_1^i y`` has zero
    constant coefficient, so ``1`` is outside ``A_{i-1} X_1^i A_{i-1}``.  This
    covers in particular all pairs with ``deg x + deg y < i``.
    """
    if i < 1:
        raise ValueError("the probe needs i >= 1")
    power = WeylElement.monomial((i,) + (0,) * (n - 1), (0,) * n)
    basis = filtration_basis(n, i - 1)
    check_span("lower-bound probe pairs", len(basis) ** 2)
    for y in basis:
        py = mul(power, y)
        for x in basis:
            if mul(x, py).constant_coefficient() != 0:
                raise ProbeFailure(f"constant term survives in ({x}) X_1^{i} ({y})")
    return i


def module_lower_bound_probe(module: ConcreteModule, i: int) -> int:
    """Certify ``nu_{F,K}(i) >= i`` for polynomial-type modules.

    Every ``b`` in ``A_{i-1}`` maps ``x_1^i`` into the ideal ``(x_1)``, which
    misses ``M_0 = K``.
    """
    if i < 1:
        raise ValueError("the probe needs i >= 1")
    if module.designated is None:
        raise ValueError(f"{module.description} has no designated worst element")
    start = module.designated(i)
    for _, reducer in span_closure(module, [start], i - 1):
        pass
    for row in reducer.rows():
        if any(key[0] == 0 for key in row):
            raise ProbeFailure(f"A_{i - 1} x_1^{i} leaves the ideal (x_1)")
    return i


# --------------------------------------------------------------------------
# Profiles


@dataclass(frozen=True)
class ProfileRow:
    i: int
    lower: int
    upper: int | None
    witnesses: tuple = ()
    samples: int = 0
    seed: int | None = None
    observed: tuple = ()

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "witnesses": list(self.witnesses),
            "samples": self.samples,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class ReturnFunctionProfile:
    target: str
    rows: tuple
    samples: int
    seed: int | None
    kind: str = "algebra"
    certified_upper: bool = True
    cyclic_restricted: bool = False
    notes: tuple = field(default_factory=tuple)

    def lower_values(self) -> list[int]:
        return [r.lower for r in self.rows]

    def upper_values(self) -> list:
        return [r.upper for r in self.rows]

    @property
    def is_exact(self) -> bool:
        return all(r.exact for r in self.rows)

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "kind": self.kind,
            "samples": self.samples,
            "seed": self.seed,
            "certified_upper": self.certified_upper,
            "cyclic_restricted": self.cyclic_restricted,
            "rows": [r.to_json() for r in self.rows],
        }


def _rng(seed, i, s) -> random.Random:
    return random.Random(f"{seed}:{i}:{s}")


def random_homogeneous_element(n: int, i: int, rng: random.Random) -> WeylElement:
    """Every monomial of degree exactly ``i`` with a coefficient from ``{-3..3} \\ {0}``."""
    terms = {(v[:n], v[n:]): rng.choice(SAMPLE_COEFFICIENTS) for v in monomials_of_degree(2 * n, i)}
    return WeylElement(n, terms)


def random_module_vector(module: ConcreteModule, i: int, rng: random.Random):
    if module.graded_keys is None:
        raise ValueError(f"{module.description} has no graded basis to sample from")
    return {k: Fraction(rng.choice(SAMPLE_COEFFICIENTS)) for k in module.graded_keys(i)}


def lowering_chain(module: ConcreteModule, u) -> tuple[tuple, dict]:
    """Apply the first generator (fixed order) lowering the degree until degree 0."""
    chain = []
    v = u
    while module.vector_degree(v) > 0:
        for g in range(1, 2 * module.n + 1):
            w = module.act(g, v)
            if w and module.vector_degree(w) < module.vector_degree(v):
                break
        else:
            return tuple(chain), v
        chain.append(g)
        v = w
    return tuple(chain), v


def _algebra_row(n: int, i: int, samples: int, seed) -> ProfileRow:
    if i == 0:
        cert = ad_chain_witness(WeylElement.scalar(n))
        return ProfileRow(0, 0, 0, (cert.encode(),), samples, seed, (0,))
    probe_bound = lower_bound_probe(n, i)
    elements = [WeylElement.monomial((i,) + (0,) * (n - 1), (0,) * n)]
    elements += [random_homogeneous_element(n, i, _rng(seed, i, s)) for s in range(samples)]
    observed = []
    witnesses = []
    for a in elements:
        cert = ad_chain_witness(a)
        if not cert.verify():
            raise ProbeFailure(f"ad-chain certificate for {a} does not replay")
        cap = len(cert.chain)
        probe = element_return_index_algebra(a, cap)
        if probe.index is None or probe.index > cap:
            raise ProbeFailure(f"return index of {a} exceeds its ad-chain bound {cap}")
        observed.append(probe.index)
        witnesses.append(cert.encode())
    return ProfileRow(i, max([probe_bound] + observed), i, tuple(witnesses), samples, seed, tuple(observed))


def _module_row(module: ConcreteModule, i: int, samples: int, seed, j_max: int) -> ProfileRow:
    elements = []
    if module.designated is not None:
        elements.append(module.designated(i))
    if samples and module.graded_keys is not None:
        elements += [random_module_vector(module, i, _rng(seed, i, s)) for s in range(samples)]
    observed = []
    witnesses = []
    for u in elements:
        probe = element_return_index_module(module, u, j_max)
        if probe.index is None:
            raise ProbeFailure(f"no return within j_max={j_max} for a vector of degree {i}")
        observed.append(probe.index)
        if module.degree is not None:
            chain, _ = lowering_chain(module, u)
            witnesses.append(" > ".join(generator_name(module.n, g) for g in chain) or "scalar")
    lower = max(observed, default=0)
    if i >= 1 and module.designated is not None:
        lower = max(lower, module_lower_bound_probe(module, i))
    upper = module.return_cap(i) if module.return_cap is not None else None
    if upper is not None and lower > upper:
        raise ProbeFailure(f"observed return index {lower} exceeds the certified cap {upper} at i={i}")
    return ProfileRow(i, lower, upper, tuple(witnesses), samples, seed, tuple(observed))


def return_function_profile(
    target: Union[int, ConcreteModule], i_max: int, samples: int = 0, seed: int | None = 0,
    j_max: int | None = None, executor=None,
) -> ReturnFunctionProfile:
    """Interval profile of the return function for ``A_n`` (``target = n``) or a module.

    ``executor`` may be any object with an order-preserving ``map``.
    """
    if i_max < 0 or samples < 0:
        raise ValueError("i_max and samples must be non-negative")
    if samples and seed is None:
        raise ValueError("a seed is required for sampled profiles")
    mapper = executor.map if executor is not None else map
    if isinstance(target, int):
        rows = tuple(mapper(_algebra_row, [target] * (i_max + 1), range(i_max + 1),
                            [samples] * (i_max + 1), [seed] * (i_max + 1)))
        return ReturnFunctionProfile(f"A_{target}", rows, samples, seed)
    if not isinstance(target, ConcreteModule):
        raise TypeError("module profiles need a concrete realization")
    bound = j_max if j_max is not None else 2 * i_max + 2
    rows = tuple(mapper(_module_row, [target] * (i_max + 1), range(i_max + 1),
                        [samples] * (i_max + 1), [seed] * (i_max + 1), [bound] * (i_max + 1)))
    return ReturnFunctionProfile(
        target.description, rows, samples, seed, kind="module",
        certified_upper=target.return_cap is not None,
        cyclic_restricted=not target.simple,
    )
