import random
from fractions import Fraction
from math import factorial

import pytest

from filtra.growth import fit_quasi_polynomial, growth_profile
from filtra.inequalities import (
    Root,
    commutative_subalgebra_bound,
    filter_dimension_consistency,
    first_filter_bound,
    first_filter_report,
    holonomic_classify,
    inequality_report,
    l_prime,
    length_bounds,
    second_filter_bound,
    weyl_constants,
)
from filtra.modules import cyclic_quotient_module, direct_sum, polynomial_module, random_cyclic_quotient
from filtra.returns import return_function_profile


def test_bound_formulas():
    for n in range(1, 5):
        assert first_filter_bound(2 * n, 1) == n
        assert second_filter_bound(2 * n, 1) == n
        assert commutative_subalgebra_bound(2 * n, 1) == n
    # d = 0 falls back to max(d, 1) = 1 in the denominator
    assert second_filter_bound(3, 0) == 0
    assert second_filter_bound(6, Fraction(3, 2)) == 4
    with pytest.raises(ValueError):
        second_filter_bound(0, 1)
    with pytest.raises(ValueError):
        second_filter_bound(2, -1)


def test_l_prime_cases():
    assert l_prime(1, 1) == 2
    assert l_prime(3, 2) == 3
    assert l_prime(3, Fraction(1, 2)) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_length_constant_squares(n):
    c = weyl_constants(n).c_A
    assert c.square == Fraction(1, factorial(2 * n)) / 2 ** n


def test_root_comparisons():
    r = Root(Fraction(2))
    assert str(r) == "sqrt(2)" and r.exact is None
    assert r.ge(1) and not r.ge(2) and r.le(2) and not r.le(1)
    assert str(Root(Fraction(1, 4))) == "1/2"


def _fit(module, i_max=9):
    return growth_profile(module, i_max)


def test_bernstein_on_named_modules():
    fits = [_fit(polynomial_module(1)), _fit(cyclic_quotient_module(1, ["d1 - 1"], 10))]
    verdicts = first_filter_report(1, fits, ["P_1", "exp"])
    assert [v.text() for v in verdicts] == ["holds (1 >= 1), holonomic"] * 2
    for fit in fits:
        assert holonomic_classify(1, fit) == (True, 0)
        assert fit.multiplicity == 1


def test_bernstein_on_random_quotients():
    rng = random.Random(2024)
    for _ in range(20):
        fit = _fit(random_cyclic_quotient(1, rng, 10))
        assert fit.is_exact and fit.degree >= 1


def test_unstable_fits_are_skipped_not_hidden():
    fit = fit_quasi_polynomial([2 ** i for i in range(10)])
    (verdict,) = first_filter_report(1, [fit], ["wild"])
    assert verdict.skipped and "unstable" in verdict.text()
    with pytest.raises(ValueError):
        holonomic_classify(1, fit)


def test_polynomial_module_length_bounds():
    bounds = length_bounds(1, _fit(polynomial_module(1)))
    assert bounds.by_leading_coefficient.exact == 2
    assert bounds.by_multiplicity == 1
    assert bounds.c_A.square == Fraction(1, 4)
    assert bounds.admits(1) and not bounds.admits(2)


def test_direct_sum_leading_coefficients_add():
    p1 = polynomial_module(1)
    single = _fit(p1)
    double = _fit(direct_sum(p1, p1))
    assert double.leading_coefficient == 2 == 2 * single.leading_coefficient
    assert length_bounds(1, double).admits(2)


def test_non_holonomic_module_has_no_length_bounds():
    with pytest.raises(ValueError):
        length_bounds(1, fit_quasi_polynomial([i * i for i in range(10)]))


def test_filter_dimension_estimates():
    report = filter_dimension_consistency(return_function_profile(1, 5))
    assert report.exact and report.estimate == 1
    assert all(v.holds for v in report.verdicts)
    module_report = filter_dimension_consistency(
        return_function_profile(polynomial_module(1), 6), algebra_gk=2, module_gk=1
    )
    assert module_report.estimate == 1
    assert [v.name for v in module_report.verdicts] == ["fd-at-least-half", "gk-at-most-gk-times-fd"]


def test_aggregate_report():
    p1 = polynomial_module(1)
    fits = [_fit(p1), _fit(direct_sum(p1, p1))]
    report = inequality_report(1, fits, ["P_1", "P_1 + P_1"], true_lengths=[1, 2])
    assert not report.falsified
    data = report.to_json()
    assert data["formulas"]["second_filter_bound"] == "1"
    assert data["modules"][1]["length_within_bounds"] is True
    # claiming a length beyond both bounds is a falsification
    assert inequality_report(1, fits[:1], ["P_1"], true_lengths=[3]).falsified


def _synthetic_profile(values, kind="algebra"):
    from filtra.returns import ProfileRow, ReturnFunctionProfile

    rows = tuple(ProfileRow(i, v, v) for i, v in enumerate(values))
    return ReturnFunctionProfile("synthetic", rows, 0, 0, kind=kind)


def test_constant_profile_is_flagged():
    report = filter_dimension_consistency(_synthetic_profile([0] * 6))
    assert report.fd_lower == 0
    assert any(v.falsification for v in report.verdicts)
    assert "FALSIFIED (0 >= 1/2)" in [v.text() for v in report.verdicts]


def test_short_profile_has_no_estimate():
    report = filter_dimension_consistency(_synthetic_profile([0]))
    assert report.fd_lower is None and report.notes


def test_first_filter_examples():
    big = _fit(cyclic_quotient_module(1, [], 10))
    (verdict,) = first_filter_report(1, [big], ["A_1"])
    assert verdict.holds and verdict.text() == "holds (2 >= 1), not holonomic (margin 1)"
    assert holonomic_classify(1, big) == (False, 1)
    (p2,) = first_filter_report(2, [_fit(polynomial_module(2))], ["P_2"])
    assert p2.text() == "holds (2 >= 2), holonomic"
    zero = _fit(cyclic_quotient_module(1, ["1"], 10))
    with pytest.raises(ValueError):
        holonomic_classify(1, zero)


def test_calculator_examples():
    assert second_filter_bound(3, Fraction(1, 2)) == 1
    assert commutative_subalgebra_bound(2, Fraction(1, 2)) == Fraction(2, 3)
    for gk in (1, 2, 5):
        for d in (0, Fraction(1, 2), 1, 3):
            assert second_filter_bound(gk, d) < gk
        assert second_filter_bound(gk, 1) == Fraction(gk, 2)


def test_exponential_module_bounds():
    bounds = length_bounds(1, _fit(cyclic_quotient_module(1, ["d1 - 1"], 10)))
    assert bounds.by_leading_coefficient.exact == 2 and bounds.by_multiplicity == 1
    p1 = polynomial_module(1)
    double = length_bounds(1, _fit(direct_sum(p1, p1)))
    assert double.by_leading_coefficient.exact == 4 and double.by_multiplicity == 2
