"""Factored integers and the increasing prime sequence."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt, prod

TRIAL_DIVISION_LIMIT = 10**6


class FactorizationLimitError(ValueError):
    pass


@dataclass(frozen=True)
class FactoredInteger:
    """``value = prod(p**a for p, a in factors)`` with primes increasing."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")
        for p, a in self.factors:
            if a < 1 or not is_prime(p):
                raise ValueError(f"bad factor {p}^{a}")

    @property
    def value(self) -> int:
        return prod(p**a for p, a in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def largest_prime(self) -> int | None:
        return self.factors[-1][0] if self.factors else None

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{a}" if a > 1 else str(p) for p, a in self.factors)


def factorize(n: int) -> FactoredInteger:
    """Trial division by every integer up to ``TRIAL_DIVISION_LIMIT``.

    A cofactor left over after that is prime when it is below the square of
    the limit; anything larger is refused rather than guessed at.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n and d <= TRIAL_DIVISION_LIMIT:
        if n % d == 0:
            a = 0
            while n % d == 0:
                n //= d
                a += 1
            out.append((d, a))
        d += 1 if d == 2 else 2
    if n > 1:
        if n > TRIAL_DIVISION_LIMIT**2:
            raise FactorizationLimitError(f"cofactor {n} is beyond the trial-division range")
        out.append((n, 1))
    return FactoredInteger(tuple(out))


def as_factored(n: int | FactoredInteger) -> FactoredInteger:
    return n if isinstance(n, FactoredInteger) else factorize(n)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, isqrt(n) + 1, 2))


def prime_divisors(n: int) -> list[int]:
    return list(factorize(n).primes)


@lru_cache(maxsize=None)
def nth_prime(i: int) -> int:
    """``q_i`` with ``q_1 = 2``; ``nth_prime(0) = 1`` by convention."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    if i == 0:
        return 1
    if i == 1:
        return 2
    q = nth_prime(i - 1) + 1
    while not is_prime(q):
        q += 1
    return q


def smallest_prime_factor_sieve(limit: int) -> list[int]:
    spf = list(range(limit + 1))
    for i in range(2, isqrt(limit) + 1):
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf
