from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from filtra.growth import EXACT_FIT, UNSTABLE, differences, fit_quasi_polynomial, interpolate, poly_eval
from filtra.modules import DimensionSequence


def test_interpolation_is_exact():
    coeffs = interpolate([(0, 1), (1, 3), (2, 6)])
    assert coeffs == (1, Fraction(3, 2), Fraction(1, 2))
    assert [poly_eval(coeffs, x) for x in range(5)] == [1, 3, 6, 10, 15]
    assert differences([1, 3, 6, 10]) == [2, 3, 4]


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_binomial_sequences(n):
    fit = fit_quasi_polynomial([comb(i + n, n) for i in range(12)])
    assert fit.status == EXACT_FIT
    assert fit.degree == n
    assert fit.multiplicity == 1
    assert fit.leading_coefficient == Fraction(1, factorial(n))
    assert fit.denominators_ok()
    assert fit.fit_from == 0


def test_period_two_sequence():
    # i/2 + 1 on even i, (i + 1)/2 on odd i
    seq = [i // 2 + 1 for i in range(16)]
    fit = fit_quasi_polynomial(seq, k=2)
    assert fit.is_exact
    assert (fit.degree, fit.leading_coefficient, fit.multiplicity) == (1, Fraction(1, 2), Fraction(1, 2))
    assert fit.denominators_ok()
    assert fit.values(16) == seq


def test_eventual_fit_reports_start():
    seq = [7, 0, 3] + [i for i in range(3, 14)]
    fit = fit_quasi_polynomial(seq)
    assert fit.degree == 1 and fit.fit_from == 3


def test_zero_and_unstable_sequences():
    zero = fit_quasi_polynomial([0] * 10)
    assert zero.zero_module and zero.status == UNSTABLE
    exponential = fit_quasi_polynomial([2 ** i for i in range(12)])
    assert exponential.status == UNSTABLE and exponential.degree is None
    assert "did not stabilize" in exponential.reason


def test_short_sequence_rejected():
    with pytest.raises(ValueError):
        fit_quasi_polynomial([1, 2, 3], k=1)
    with pytest.raises(ValueError):
        fit_quasi_polynomial(list(range(10)), k=0)


def test_inexact_data_is_flagged():
    seq = DimensionSequence(tuple(range(1, 11)), (True,) * 9 + (False,), "test")
    fit = fit_quasi_polynomial(seq)
    assert fit.is_exact and not fit.exact_data and fit.source == "test"


def test_json_uses_rational_strings():
    data = fit_quasi_polynomial([comb(i + 2, 2) for i in range(10)]).to_json()
    assert data["degree"] == 2 and data["multiplicity"] == "1" and data["leading_coefficient"] == "1/2"


@st.composite
def quasi_polynomials(draw):
    k = draw(st.integers(1, 3))
    d = draw(st.integers(0, 3))
    lead = Fraction(draw(st.integers(1, 6)), k ** d * factorial(d))
    polys = []
    for _ in range(k):
        lower = [Fraction(draw(st.integers(-20, 20)), draw(st.integers(1, 4))) for _ in range(d)]
        polys.append(tuple(lower) + (lead,))
    return k, d, lead, polys


@given(quasi_polynomials())
def test_fit_recovers_quasi_polynomials(data):
    k, d, lead, polys = data
    length = k * 10
    values = [poly_eval(polys[i % k], i) for i in range(length)]
    fit = fit_quasi_polynomial(values, k=k)
    assert fit.is_exact and fit.degree == d and fit.leading_coefficient == lead
    assert [fit.evaluate(i) for i in range(length)] == values
    # idempotence: refitting the fitted values reproduces the fit
    again = fit_quasi_polynomial([fit.evaluate(i) for i in range(length)], k=k)
    assert again.polynomials == fit.polynomials


def test_growth_profile_examples():
    from filtra.growth import growth_profile
    from filtra.modules import cyclic_quotient_module, direct_sum, polynomial_module

    p2 = growth_profile(polynomial_module(2), 8)
    assert (p2.degree, p2.multiplicity) == (2, 1)
    itself = growth_profile(cyclic_quotient_module(1, [], 9), 8)
    assert (itself.degree, itself.leading_coefficient, itself.multiplicity) == (2, Fraction(1, 2), 1)
    zero = growth_profile(cyclic_quotient_module(1, ["1"], 9), 8)
    assert zero.zero_module and not zero.is_exact
    # direct sums: degree is the max, multiplicities add when degrees agree
    p1 = polynomial_module(1)
    assert growth_profile(direct_sum(p1, p1), 8).multiplicity == 2
    mixed = growth_profile(direct_sum(p1, polynomial_module(1)), 8)
    assert mixed.degree == 1
    # with e = d! * lc a finite-dimensional module has degree 0 and e = dim M;
    # it is the first differences (graded pieces) that vanish eventually
    finite = fit_quasi_polynomial([1, 2, 3] + [4] * 9)
    assert finite.degree == 0 and finite.multiplicity == 4
    assert differences([1, 2, 3] + [4] * 10)[-8:] == [0] * 8
