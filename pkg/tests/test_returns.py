import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import weyl_elements
from filtra.modules import cyclic_quotient_module, direct_sum, polynomial_module, twisted_polynomial_module
from filtra.returns import (
    BOUND_REACHED,
    EXACT,
    ad_chain_witness,
    element_left_return_index,
    element_return_index_algebra,
    element_return_index_module,
    lower_bound_probe,
    module_lower_bound_probe,
    random_homogeneous_element,
    return_function_profile,
)
from filtra.weyl import WeylElement, filtration_degree, mul, parse


def test_ad_chain_for_x_squared():
    cert = ad_chain_witness(parse("x1^2"))
    assert cert.chain == (2, 2)
    assert cert.scalar == 2
    assert cert.encode() == "ad d1 > ad d1 > 2"
    assert cert.verify()


def test_ad_chain_of_scalar_is_empty():
    cert = ad_chain_witness(WeylElement.scalar(2, 5))
    assert cert.chain == () and cert.scalar == 5


def test_zero_has_no_certificate():
    with pytest.raises(ValueError):
        ad_chain_witness(WeylElement.zero(1))


@given(weyl_elements(2, max_degree=3))
def test_certificates_replay_and_expand(a):
    if not a:
        return
    cert = ad_chain_witness(a)
    assert cert.verify()
    assert len(cert.chain) <= filtration_degree(a)
    total = WeylElement.zero(2)
    for c, left, right in cert.expand():
        assert filtration_degree(left) <= len(cert.chain) and filtration_degree(right) <= len(cert.chain)
        total = total + mul(mul(left, a), right) * c
    assert total == 1


def test_element_index_of_generator_powers():
    assert element_return_index_algebra(parse("x1^3"), 3).index == 3
    # d (xd) x - x (xd) d - 3 (xd) = 1, so x1*d1 returns already at j = 1
    assert element_return_index_algebra(parse("x1*d1"), 2).index == 1
    probe = element_return_index_algebra(parse("x1^3"), 2)
    assert probe.index is None and probe.status == BOUND_REACHED


def test_left_index_with_cutoff():
    probe = element_left_return_index(parse("x1^2"), 2, 3)
    assert probe.status == EXACT and probe.index is not None and probe.index <= 2
    assert probe.stabilized


def test_lower_bound_probe_passes():
    for n, top in ((1, 5), (2, 3)):
        for i in range(1, top + 1):
            assert lower_bound_probe(n, i) == i


def test_random_homogeneous_elements_are_seeded():
    a = random_homogeneous_element(2, 2, random.Random("1:2:0"))
    b = random_homogeneous_element(2, 2, random.Random("1:2:0"))
    assert a == b and filtration_degree(a) == 2


def test_algebra_profile_is_exact():
    profile = return_function_profile(1, 4, samples=10, seed=7)
    assert profile.lower_values() == profile.upper_values() == [0, 1, 2, 3, 4]
    assert profile.is_exact and profile.certified_upper
    row = profile.rows[3].to_json()
    assert set(row) == {"i", "lower", "upper", "exact", "witnesses", "samples", "seed"}
    assert row["witnesses"][0] == "ad d1 > ad d1 > ad d1 > 6"


def test_sampled_profile_needs_seed():
    with pytest.raises(ValueError):
        return_function_profile(1, 2, samples=3, seed=None)


def test_profiles_are_deterministic():
    a = return_function_profile(2, 2, samples=3, seed=11)
    b = return_function_profile(2, 2, samples=3, seed=11)
    assert a.to_json() == b.to_json()


def test_module_index_of_monomials():
    p2 = polynomial_module(2)
    assert element_return_index_module(p2, {(2, 1): Fraction(1)}, 5).index == 3
    assert element_return_index_module(p2, {(0, 0): Fraction(4)}, 5).index == 0


def test_polynomial_module_profiles():
    for n, top in ((1, 6), (2, 4)):
        profile = return_function_profile(polynomial_module(n), top, samples=3, seed=1)
        assert profile.lower_values() == profile.upper_values() == list(range(top + 1))
        assert not profile.cyclic_restricted


def test_module_probe_on_twisted_module():
    module = twisted_polynomial_module(1, [2])
    assert module_lower_bound_probe(module, 3) == 3
    profile = return_function_profile(module, 3)
    assert profile.lower_values() == [0, 1, 2, 3]
    # no proved cap is attached to shifted realizations
    assert profile.upper_values() == [None] * 4 and not profile.certified_upper


def test_non_simple_modules_are_flagged():
    p1 = polynomial_module(1)
    profile = return_function_profile(direct_sum(p1, p1), 1)
    assert profile.cyclic_restricted


def test_cyclic_quotients_are_rejected():
    with pytest.raises(TypeError):
        return_function_profile(cyclic_quotient_module(1, ["d1"], 4), 2)


def test_spec_examples_for_indices():
    assert element_return_index_algebra(WeylElement.scalar(1), 0).index == 0
    assert element_return_index_algebra(parse("x1"), 2).index == 1
    p1 = polynomial_module(1)
    assert element_return_index_module(p1, {(0,): Fraction(1)}, 3).index == 0
    assert element_return_index_module(p1, {(4,): Fraction(1)}, 6).index == 4
    assert element_return_index_module(p1, {(0,): Fraction(1), (1,): Fraction(1)}, 3).index == 1
    # greedy in the fixed order x1, d1: ad x1 gives -x1, then ad d1 gives -1,
    # i.e. the composition ad(d1) o ad(x1)
    cert = ad_chain_witness(parse("x1*d1"))
    assert cert.chain == (1, 2) and cert.scalar == -1
    assert cert.encode() == "ad x1 > ad d1 > -1"
    assert ad_chain_witness(parse("x1")).encode() == "ad d1 > 1"
    assert lower_bound_probe(1, 1) == 1 and lower_bound_probe(1, 3) == 3 and lower_bound_probe(2, 2) == 2
    with pytest.raises(ValueError):
        lower_bound_probe(1, 0)
    with pytest.raises(ValueError):
        element_return_index_module(p1, {}, 3)


def test_left_index_never_exceeds_two_sided_index():
    rng = random.Random(21)
    for _ in range(6):
        a = random_homogeneous_element(1, rng.randint(1, 3), rng)
        two_sided = element_return_index_algebra(a, 3).index
        left = element_left_return_index(a, 3, 3).index
        assert left is not None and left <= two_sided


def test_profiles_are_non_decreasing():
    for profile in (return_function_profile(1, 4, samples=3, seed=2),
                    return_function_profile(polynomial_module(2), 3, samples=3, seed=2)):
        lower = profile.lower_values()
        assert lower == sorted(lower)
        assert all(r.lower <= r.upper for r in profile.rows)


def test_parallel_profile_matches_serial():
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(2) as pool:
        parallel = return_function_profile(1, 3, samples=4, seed=5, executor=pool)
    assert parallel.to_json() == return_function_profile(1, 3, samples=4, seed=5).to_json()
