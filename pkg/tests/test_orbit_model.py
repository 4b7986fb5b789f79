from itertools import permutations
from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from brieskorn_mec.exact_arith import DomainError, pairwise_coprime
from brieskorn_mec.orbit_model import (
    UNSUPPORTED_LATTICE,
    enumerate_orbit_spaces,
    equivariant_euler_of_sphere,
    generator_count_by_time,
    larger_periods_for,
    phi_count,
    phi_product_formula,
    stratum_phi_count,
    support_at_time,
)
from oracles import generators_by_time, times_with_exact_support

coprime_tuples = st.lists(st.integers(1, 13), min_size=3, max_size=5).filter(
    lambda v: pairwise_coprime(v) and prod(v) <= 20000
)


def test_enumerate_235():
    strata = enumerate_orbit_spaces((2, 3, 5))
    assert [s.period for s in strata] == [6, 10, 15, 30]
    assert [s.multiplicity for s in strata] == [4, 2, 1, 1]
    assert strata[-1].support == (0, 1, 2)
    assert strata[-1].manifold_dim == 3
    assert strata[-1].equivariant_euler == 2


def test_enumerate_2357(s2357):
    strata = enumerate_orbit_spaces(s2357)
    assert len(strata) == 11
    first = next(s for s in strata if s.support == (0, 1))
    assert (first.period, first.manifold_dim, first.equivariant_euler, first.multiplicity) == (6, 1, 1, 24)
    assert strata[-1].period == 210 and strata[-1].multiplicity == 1


def test_enumerate_unit_exponents():
    strata = enumerate_orbit_spaces((1, 1, 1))
    assert len(strata) == 4
    assert {s.period for s in strata} == {1}


def test_enumerate_rejects():
    with pytest.raises(DomainError, match=UNSUPPORTED_LATTICE):
        enumerate_orbit_spaces((2, 3, 4))
    with pytest.raises(DomainError):
        enumerate_orbit_spaces((2, 3))


def test_phi_count_examples():
    larger = [10, 14, 15, 21, 30, 35, 42, 70, 105, 210]
    assert phi_count(6, larger, 210) == 24
    assert phi_count(210, [], 210) == 0
    assert phi_count(1, [], 5) == 4


@pytest.mark.parametrize("args", [(4, [], 10), (2, [5], 12), (6, [4], 12), (4, [2], 20)])
def test_phi_count_rejects_bad_divisibility(args):
    with pytest.raises(DomainError):
        phi_count(*args)


def test_phi_product_examples():
    assert phi_product_formula((2, 3, 5, 7), {0, 1}) == 24
    assert phi_product_formula((2, 3, 5, 7), {0, 1, 2, 3}) == 1
    assert phi_product_formula((1, 3, 5), {1, 2}) == 0
    with pytest.raises(DomainError):
        phi_product_formula((2, 3, 5), {0, 7})


@pytest.mark.parametrize("dim, expected", [(3, 2), (1, 1), (2 * 4 - 1, 4)])
def test_equivariant_euler(dim, expected):
    assert equivariant_euler_of_sphere(dim) == expected


def test_equivariant_euler_even_dim():
    with pytest.raises(DomainError):
        equivariant_euler_of_sphere(4)


def test_support_at_time_examples():
    assert support_at_time((2, 3, 5, 7), 6) == {0, 1}
    assert support_at_time((2, 3, 5, 7), 1) == set()
    assert support_at_time((2, 3, 5), 30) == {0, 1, 2}


@given(coprime_tuples)
def test_phi_definition_matches_product(exps):
    strata = enumerate_orbit_spaces(exps)
    full = tuple(range(len(exps)))
    for s in strata:
        if s.support == full:
            continue
        counted = stratum_phi_count(exps, s, strata)
        assert counted == phi_product_formula(exps, s.support) == s.multiplicity


@given(coprime_tuples)
def test_multiplicity_is_exact_support_count(exps):
    # geometric meaning: times strictly inside one period where exactly I returns
    for s in enumerate_orbit_spaces(exps):
        if len(s.support) < len(exps):
            assert s.multiplicity == times_with_exact_support(exps, s.support)


@given(coprime_tuples)
def test_generator_total_matches_time_walk(exps):
    strata = enumerate_orbit_spaces(exps)
    total = sum(s.multiplicity * s.equivariant_euler for s in strata)
    assert total == generator_count_by_time(exps) == generators_by_time(exps)


@given(coprime_tuples)
def test_periods_divide_principal_and_parity(exps):
    n = len(exps) - 1
    for s in enumerate_orbit_spaces(exps):
        assert prod(exps) % s.period == 0
        assert s.equivariant_euler == (s.manifold_dim + 1) // 2
        assert s.degree_parity == (n + 1) % 2


@given(coprime_tuples, st.randoms(use_true_random=False))
def test_permutation_invariance(exps, rnd):
    perm = list(range(len(exps)))
    rnd.shuffle(perm)
    permuted = [exps[i] for i in perm]
    original = sorted((s.period, s.multiplicity, s.manifold_dim) for s in enumerate_orbit_spaces(exps))
    shuffled = sorted((s.period, s.multiplicity, s.manifold_dim) for s in enumerate_orbit_spaces(permuted))
    assert original == shuffled


def test_absorbed_stratum_has_zero_count():
    # with three unit exponents {0,1} returns together with {0,1,2} at t = 1
    exps = (1, 1, 1, 2)
    strata = enumerate_orbit_spaces(exps)
    s01 = next(s for s in strata if s.support == (0, 1))
    assert stratum_phi_count(exps, s01, strata) == 0 == phi_product_formula(exps, s01.support)
    # the bare definition, blind to equal-period supersets, would count t = 1
    assert phi_count(1, larger_periods_for(strata, s01), 2) == 1


@given(coprime_tuples)
def test_phi_count_matches_product_for_period_maximal_strata(exps):
    strata = enumerate_orbit_spaces(exps)
    principal = prod(exps)
    for s in strata:
        if s.period < principal and support_at_time(exps, s.period) == set(s.support):
            assert phi_count(s.period, larger_periods_for(strata, s), principal) == s.multiplicity
