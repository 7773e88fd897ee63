"""Exact sums of element orders and the bounds built on them.

No floating point is used anywhere in here: thresholds are ``Fraction``
values and every comparison is a cross-multiplication of integers.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

import numpy as np

from .factor import FactoredInteger, as_factored, nth_prime
from .group import TABLE_BOUND, FiniteGroup
from .perm import Permutation, order_of

# ExactRational is the stdlib Fraction: always reduced, denominator > 0.
ExactRational = Fraction

T_RATIO = Fraction(31, 77)
ODD_RATIO = Fraction(271, 3647)
SOLVABLE_RATIO = Fraction(211, 1617)
HERZOG_CONSTANT = Fraction(385, 96)


class Comparison(enum.Enum):
    GREATER = "Greater"
    EQUAL = "Equal"
    LESS = "Less"

    def __str__(self) -> str:
        return self.value


class BoundNotApplicable(ValueError):
    """The hypothesis of a lower bound does not hold for this n."""


def psi(g: FiniteGroup) -> int:
    """Sum of the orders of all elements of ``g``."""
    if g.order <= TABLE_BOUND:
        return int(g.element_orders().sum())
    return sum(order_of(p) for p in g.elements())


def order_histogram(g: FiniteGroup) -> dict[int, int]:
    counts = np.bincount(g.element_orders())
    return {int(k): int(v) for k, v in enumerate(counts) if v}


def psi_via_cyclic_subgroups(g: FiniteGroup) -> int:
    """sum over cyclic subgroups C of phi(|C|) * |C|.

    Each cyclic subgroup of order d has exactly phi(d) generators, all of
    order d, and every element generates exactly one cyclic subgroup.
    """
    t = g.table
    seen = set()
    total = 0
    for x in range(t.n):
        c = t.cyclic(x)
        key = c.tobytes()
        if key in seen:
            continue
        seen.add(key)
        d = int(c.sum())
        total += euler_phi(d) * d
    return total


def euler_phi(n: int) -> int:
    out = n
    for p in as_factored(n).primes:
        out -= out // p
    return out


def psi_cyclic(n: int | FactoredInteger) -> int:
    """psi(C_n) = prod (p^(2a+1) + 1) / (p + 1) over the prime powers p^a || n."""
    out = 1
    for p, a in as_factored(n).factors:
        num = p ** (2 * a + 1) + 1
        q, r = divmod(num, p + 1)
        assert r == 0
        out *= q
    return out


def f_prime(r: int) -> Fraction:
    """f'(1) = 1 and f'(r) = prod_{i=2..r} q_i / (q_i + 1) over the primes q_1=2 < q_2=3 < ..."""
    if r < 1:
        raise ValueError("f' is defined for r >= 1")
    out = Fraction(1)
    for i in range(2, r + 1):
        q = nth_prime(i)
        out *= Fraction(q, q + 1)
    return out


def h_prime(s: int) -> Fraction:
    """h'(2) = 3 and h'(s) = f'(s-1) * q_s."""
    if s < 2:
        raise ValueError("h' is defined for s >= 2")
    if s == 2:
        return Fraction(3)
    return f_prime(s - 1) * nth_prime(s)


def herzog_lower_bound(n: int | FactoredInteger, *, odd: bool = False) -> Fraction:
    """Lower bound for psi(C_n) in terms of n and its largest prime p.

    ``odd=False``: 385/96 * n^2/(p+1), valid when p >= 11.
    ``odd=True``: h'(12) * n^2/(p+1), valid for odd n with p >= 37.
    Raises ``BoundNotApplicable`` when the hypothesis fails.
    """
    f = as_factored(n)
    p = f.largest_prime
    value = f.value
    if odd:
        if value % 2 == 0 or p is None or p < 37:
            raise BoundNotApplicable(f"odd bound needs odd n with largest prime >= 37 (n={value})")
        const = h_prime(12)
    else:
        if p is None or p < 11:
            raise BoundNotApplicable(f"bound needs largest prime >= 11 (n={value})")
        const = HERZOG_CONSTANT
    return const * Fraction(value * value, p + 1)


def threshold_compare(psi_g: int, ratio: Fraction, psi_cn: int) -> Comparison:
    """Trichotomy of psi_g against ratio * psi_cn, by cross-multiplication."""
    ratio = Fraction(ratio)
    lhs = psi_g * ratio.denominator
    rhs = ratio.numerator * psi_cn
    if lhs > rhs:
        return Comparison.GREATER
    if lhs == rhs:
        return Comparison.EQUAL
    return Comparison.LESS


def max_element_order_witness(g: FiniteGroup) -> tuple[Permutation, int]:
    """An element of maximal order (first in element order) and |G : <x>|."""
    orders = g.element_orders()
    i = int(np.argmax(orders))
    return g.elements()[i], g.order // int(orders[i])


def cyclic_index_bound(ratio: Fraction, n: int) -> Fraction:
    """(s/r) * prod (p_i + 1)/p_i for ratio r/s, over the primes dividing n."""
    out = 1 / Fraction(ratio)
    for p in as_factored(n).primes:
        out *= Fraction(p + 1, p)
    return out


def exponent(g: FiniteGroup) -> int:
    return math.lcm(*(int(o) for o in np.unique(g.element_orders())))
