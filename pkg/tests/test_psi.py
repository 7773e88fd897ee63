from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ordersum.constructors import alternating, cyclic, dihedral, direct_product, symmetric
from ordersum.factor import factorize
from ordersum.psi import (HERZOG_CONSTANT, ODD_RATIO, SOLVABLE_RATIO, T_RATIO, BoundNotApplicable, Comparison,
                          cyclic_index_bound, euler_phi, exponent, f_prime, h_prime, herzog_lower_bound,
                          max_element_order_witness, order_histogram, psi, psi_cyclic, psi_via_cyclic_subgroups,
                          threshold_compare)


def test_known_values():
    assert psi(alternating(4)) == 31
    assert psi(symmetric(3)) == 13
    assert psi(dihedral(4)) == 19
    assert psi_cyclic(12) == 77
    assert psi_cyclic(75) == 3647
    assert psi_cyclic(1) == 1
    assert psi_cyclic(factorize(60)) == psi_cyclic(60)


def test_histogram_of_s4():
    assert order_histogram(symmetric(4)) == {1: 1, 2: 9, 3: 8, 4: 6}


def test_threshold_values_are_exact():
    assert T_RATIO == Fraction(31, 77)
    assert ODD_RATIO == Fraction(271, 3647)
    assert SOLVABLE_RATIO == Fraction(211, 1617)
    assert HERZOG_CONSTANT == Fraction(385, 96)


def test_trichotomy():
    assert threshold_compare(31, T_RATIO, 77) is Comparison.EQUAL
    assert threshold_compare(32, T_RATIO, 77) is Comparison.GREATER
    assert threshold_compare(30, T_RATIO, 77) is Comparison.LESS
    # A5 sits exactly on the solvability threshold
    assert threshold_compare(psi(alternating(5)), SOLVABLE_RATIO, psi_cyclic(60)) is Comparison.EQUAL


def test_prime_products():
    assert f_prime(1) == 1
    assert f_prime(3) == Fraction(3, 4) * Fraction(5, 6)
    assert h_prime(2) == 3
    assert h_prime(3) == f_prime(2) * 5
    with pytest.raises(ValueError):
        f_prime(0)
    with pytest.raises(ValueError):
        h_prime(1)


def test_lower_bound_hypotheses():
    with pytest.raises(BoundNotApplicable):
        herzog_lower_bound(60)
    with pytest.raises(BoundNotApplicable):
        herzog_lower_bound(74, odd=True)
    with pytest.raises(BoundNotApplicable):
        herzog_lower_bound(3 * 31, odd=True)
    assert herzog_lower_bound(22) == HERZOG_CONSTANT * Fraction(22 * 22, 12)
    assert herzog_lower_bound(37, odd=True) == h_prime(12) * Fraction(37 * 37, 38)


@pytest.mark.parametrize("n", [11, 22, 26, 60 * 11, 2 * 3 * 5 * 7 * 11, 1024 * 13])
def test_lower_bound_holds(n):
    assert psi_cyclic(n) >= herzog_lower_bound(n)


def test_index_bound_and_witness():
    assert cyclic_index_bound(T_RATIO, 12) == Fraction(77, 31) * Fraction(3, 2) * Fraction(4, 3)
    x, idx = max_element_order_witness(alternating(4))
    assert idx == 4
    assert exponent(symmetric(4)) == 12


@pytest.mark.parametrize("g", [symmetric(4), dihedral(6), direct_product(cyclic(4), cyclic(2)), alternating(5)])
def test_cyclic_subgroup_path(g):
    assert psi_via_cyclic_subgroups(g) == psi(g)


@given(st.integers(1, 3000))
def test_closed_form_matches_residue_scan(n):
    from math import gcd
    assert psi_cyclic(n) == sum(n // gcd(k, n) for k in range(n))


@given(st.integers(1, 60), st.integers(1, 60))
def test_multiplicative_on_coprime(a, b):
    from math import gcd
    if gcd(a, b) == 1:
        assert psi_cyclic(a * b) == psi_cyclic(a) * psi_cyclic(b)


def test_euler_phi():
    assert [euler_phi(n) for n in range(1, 11)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]
