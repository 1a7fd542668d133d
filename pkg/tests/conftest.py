import random
from fractions import Fraction

from hypothesis import settings, strategies as st

from filtra.weyl import Polynomial, WeylElement

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

COEFFS = [c for c in range(-3, 4) if c]


@st.composite
def _exponents(draw, nvars, max_degree):
    exps = [0] * nvars
    for _ in range(draw(st.integers(0, max_degree))):
        exps[draw(st.integers(0, nvars - 1))] += 1
    return exps


@st.composite
def weyl_elements(draw, n=1, max_degree=3, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = draw(_exponents(2 * n, max_degree))
        key = (tuple(exps[:n]), tuple(exps[n:]))
        terms[key] = terms.get(key, 0) + draw(st.sampled_from(COEFFS))
    return WeylElement(n, terms)


@st.composite
def polynomials(draw, nvars=2, max_degree=3, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(_exponents(nvars, max_degree)))
        terms[exps] = terms.get(exps, 0) + draw(st.sampled_from(COEFFS))
    return Polynomial(nvars, terms)


def random_weyl(rng: random.Random, n: int, max_degree: int = 4, max_terms: int = 4) -> WeylElement:
    """Seeded random element of A_n with total degree <= max_degree, coefficients in {-3..3}."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_degree)
        exps = [0] * (2 * n)
        for _ in range(deg):
            exps[rng.randrange(2 * n)] += 1
        key = (tuple(exps[:n]), tuple(exps[n:]))
        terms[key] = terms.get(key, 0) + rng.randint(-3, 3)
    return WeylElement(n, terms)


def random_polynomial(rng: random.Random, nvars: int, max_degree: int = 3, max_terms: int = 4) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * nvars
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(nvars)] += 1
        terms[tuple(exps)] = terms.get(tuple(exps), 0) + Fraction(rng.randint(-3, 3))
    return Polynomial(nvars, terms)
