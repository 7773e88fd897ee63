import math

import pytest
from hypothesis import given, strategies as st

from ordersum.factor import (FactoredInteger, FactorizationLimitError, factorize, is_prime, nth_prime,
                             prime_divisors, smallest_prime_factor_sieve)


def test_small_factorizations():
    assert factorize(1).factors == ()
    assert factorize(360).factors == ((2, 3), (3, 2), (5, 1))
    assert str(factorize(360)) == "2^3 * 3^2 * 5"
    assert factorize(97).largest_prime == 97
    assert factorize(1).largest_prime is None
    assert prime_divisors(84) == [2, 3, 7]


def test_invalid_input():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        FactoredInteger(((3, 1), (2, 1)))
    with pytest.raises(ValueError):
        FactoredInteger(((4, 1),))


def test_refuses_unfactorable_cofactor():
    big = (10**12 + 39) * (10**12 + 61)  # two primes beyond the trial range
    with pytest.raises(FactorizationLimitError):
        factorize(big)


def test_prime_sequence():
    assert [nth_prime(i) for i in range(8)] == [1, 2, 3, 5, 7, 11, 13, 17]
    assert nth_prime(12) == 37
    with pytest.raises(ValueError):
        nth_prime(-1)


def test_sieve_agrees_with_trial_division():
    spf = smallest_prime_factor_sieve(3000)
    for n in range(2, 3001):
        assert spf[n] == factorize(n).primes[0]
        assert is_prime(n) == (spf[n] == n)


@given(st.integers(1, 10**9))
def test_product_roundtrip(n):
    f = factorize(n)
    assert f.value == n == int(f)
    assert all(is_prime(p) for p in f.primes)
    assert math.prod(p**a for p, a in f.factors) == n
