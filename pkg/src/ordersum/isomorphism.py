"""Isomorphism testing for desk-scale groups.

Elements are first coloured by an isomorphism-invariant refinement: start from
(element order, centralizer order) and repeatedly replace the colour of ``x``
by a hash of its colour together with the multisets
``{(colour(y), colour(x*y))}`` and ``{(colour(y), colour([x, y]))}``, the
colour of each prime power ``x^p`` and the colours of the p-th roots of ``x``.
Any isomorphism preserves the final colours, so differing colour multisets
prove non-isomorphism.

Otherwise a backtracking search maps generators of the first group, one at a
time, onto same-coloured elements of the second.  Each partial map is extended
along the Cayley graph; the elements mapped so far then receive matching
individual colours on both sides and the refinement is rerun, which prunes
most wrong branches early.  A map that is returned has been checked to be a
bijective homomorphism.
"""

from __future__ import annotations

import hashlib
import random
from typing import Iterator

import numpy as np

from .table import CayleyTable

_K1 = np.uint64(0x9E3779B97F4A7C15)
_K2 = np.uint64(0xC2B2AE3D27D4EB4F)
_K3 = np.uint64(0x165667B19E3779F9)


def _mix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise 64-bit hash of two label arrays."""
    with np.errstate(over="ignore"):
        x = a * _K1 ^ (b + _K3)
        x ^= x >> np.uint64(31)
        x *= _K2
        x ^= x >> np.uint64(29)
    return x


def _powers(n: int) -> np.ndarray:
    out = np.empty(n, dtype=np.uint64)
    acc = np.uint64(1)
    with np.errstate(over="ignore"):
        for i in range(n):
            out[i] = acc
            acc = acc * _K3
    return out


def _aux(t: CayleyTable) -> tuple:
    """Power maps for the primes dividing |G| and the commutator table (cached)."""
    cached = t.__dict__.get("_aux")
    if cached is None:
        idx = np.arange(t.n)
        powers = []
        p = 2
        m = t.n
        while m > 1:
            if m % p == 0:
                while m % p == 0:
                    m //= p
                pm = np.zeros(t.n, dtype=np.int64)
                for _ in range(p):
                    pm = t.mul[pm, idx]
                powers.append(pm)
            p += 1
        comm = t.mul[t.mul[t.inv[:, None], t.inv[None, :]], t.mul]
        cached = (powers, comm)
        t.__dict__["_aux"] = cached
    return cached


def _refine(t: CayleyTable, c: np.ndarray, pw: np.ndarray) -> np.ndarray:
    """Refine colours until the number of classes stops growing.

    Each round hashes, for every x: its colour, the sorted multiset of
    (colour(y), colour(x*y)) and of (colour(y), colour([x, y])), the colour
    of x^p and the multiset of colours of its p-th roots, for each prime p.
    """
    powers, comm = _aux(t)
    mul = t.mul
    classes = len(np.unique(c))
    with np.errstate(over="ignore"):
        while True:
            pairs = _mix(c[None, :], c[mul])
            pairs.sort(axis=1)
            new = _mix(c, pairs @ pw)
            pairs = _mix(c[None, :] ^ _K2, c[comm])
            pairs.sort(axis=1)
            new = _mix(new, pairs @ pw)
            for k, pm in enumerate(powers):
                roots = np.zeros(t.n, dtype=np.uint64)
                np.add.at(roots, pm, _mix(c, np.uint64(k + 1)))
                new = _mix(_mix(new, c[pm]), roots)
            k = len(np.unique(new))
            c = new
            if k == classes:
                return c
            classes = k


def element_labels(t: CayleyTable) -> np.ndarray:
    """Isomorphism-invariant colours of the elements of ``t`` (cached).

    Refinement starts from (element order, centralizer order).
    """
    cached = t.__dict__.get("_labels")
    if cached is not None:
        return cached
    c = _mix(t.orders.astype(np.uint64), t.centralizer_orders.astype(np.uint64))
    c = _refine(t, c, _powers(t.n))
    t.__dict__["_labels"] = c
    return c


def fingerprint(t: CayleyTable) -> str:
    """Hex digest of the sorted colour multiset; equal for isomorphic groups."""
    c = np.sort(element_labels(t))
    return hashlib.blake2b(np.int64(t.n).tobytes() + c.tobytes(), digest_size=16).hexdigest()


def _mul_lists(t: CayleyTable) -> list[list[int]]:
    cached = t.__dict__.get("_mul_lists")
    if cached is None:
        cached = t.mul.tolist()
        t.__dict__["_mul_lists"] = cached
    return cached


def generating_sequence(t: CayleyTable, weight=None) -> list[int]:
    """Greedy generators, preferring elements whose colour class is small."""
    c = element_labels(t)
    _, inverse_idx, counts = np.unique(c, return_inverse=True, return_counts=True)
    size = counts[inverse_idx] if weight is None else weight
    key = np.lexsort((np.arange(t.n), -t.orders, size))
    h = np.zeros(t.n, dtype=bool)
    h[0] = True
    gens: list[int] = []
    while not h.all():
        x = next(int(x) for x in key if not h[x])
        gens.append(x)
        h = t.closure(gens)
    return gens


def _extend(m1, m2, c1, c2, phi, used, gens, imgs):
    """Extend ``phi`` from <gens[:-1]> to <gens>; None on inconsistency."""
    phi = phi.copy()
    used = used.copy()
    queue = [a for a, v in enumerate(phi) if v >= 0]
    g, img = gens[-1], imgs[-1]
    if phi[g] >= 0:
        return (phi, used) if phi[g] == img else None
    pairs = list(zip(gens, imgs))
    for a in queue:
        row1, row2 = m1[a], m2[phi[a]]
        for s, si in pairs:
            b = row1[s]
            pb = row2[si]
            cur = phi[b]
            if cur < 0:
                if used[pb] or c1[b] != c2[pb]:
                    return None
                phi[b] = pb
                used[pb] = True
                queue.append(b)
            elif cur != pb:
                return None
    return phi, used


def _next_generator(c: np.ndarray, orders: np.ndarray, mapped: np.ndarray) -> int:
    """Unmapped element in the smallest colour class (then largest order)."""
    _, inv, counts = np.unique(c, return_inverse=True, return_counts=True)
    size = counts[inv].astype(np.int64)
    size[mapped] = np.iinfo(np.int64).max
    key = np.lexsort((np.arange(len(c)), -orders, size))
    return int(key[0])


def iter_isomorphisms(t1: CayleyTable, t2: CayleyTable, *, rng: random.Random | None = None,
                      gens: list[int] | None = None) -> Iterator[list[int]]:
    """Yield isomorphisms t1 -> t2 as image lists (every one, unless stopped).

    After each generator is mapped, the elements of the subgroup mapped so far
    get matching individual colours on both sides and the refinement is rerun;
    a branch whose colour multisets then differ is dropped.  With ``rng`` the
    candidate images are tried in random order, which gives a cheap stream of
    varied automorphisms when ``t1 is t2``.  ``gens`` fixes the generators of
    ``t1`` to map, in order, instead of choosing them adaptively.
    """
    if t1.n != t2.n:
        return
    c1 = element_labels(t1)
    c2 = element_labels(t2)
    if not np.array_equal(np.sort(c1), np.sort(c2)):
        return
    m1, m2 = _mul_lists(t1), _mul_lists(t2)
    n = t1.n
    pw = _powers(n)
    phi0 = [-1] * n
    phi0[0] = 0
    used0 = [False] * n
    used0[0] = True

    def rec(phi, used, d1, d2, chosen, imgs):
        mapped = np.array(phi) >= 0
        if mapped.all():
            yield phi
            return
        depth = len(chosen)
        if gens is not None and depth < len(gens):
            x = gens[depth]
        else:
            x = _next_generator(d1, t1.orders, mapped)
        options = np.flatnonzero(d2 == d1[x]).tolist()
        if rng is not None:
            rng.shuffle(options)
        l1, l2 = d1.tolist(), d2.tolist()
        for y in options:
            if used[y]:
                continue
            ext = _extend(m1, m2, l1, l2, phi, used, chosen + [x], imgs + [y])
            if ext is None:
                continue
            nphi, nused = ext
            arr = np.array(nphi)
            new = np.flatnonzero((arr >= 0) & ~mapped)
            if len(new) and not (arr >= 0).all():
                tags = new.astype(np.uint64) + np.uint64(1)
                e1 = d1.copy()
                e2 = d2.copy()
                e1[new] = _mix(e1[new], tags)
                e2[arr[new]] = _mix(e2[arr[new]], tags)
                e1 = _refine(t1, e1, pw)
                e2 = _refine(t2, e2, pw)
                done = np.flatnonzero(arr >= 0)
                if not np.array_equal(e1[done], e2[arr[done]]):
                    continue
                if not np.array_equal(np.sort(e1), np.sort(e2)):
                    continue
            else:
                e1, e2 = d1, d2
            yield from rec(nphi, nused, e1, e2, chosen + [x], imgs + [y])

    for phi in rec(phi0, used0, c1, c2, [], []):
        yield phi


def is_homomorphism(t1: CayleyTable, t2: CayleyTable, phi) -> bool:
    phi = np.asarray(phi)
    return bool(np.array_equal(phi[t1.mul], t2.mul[phi[:, None], phi[None, :]]))


def find_isomorphism(t1: CayleyTable, t2: CayleyTable) -> list[int] | None:
    for phi in iter_isomorphisms(t1, t2):
        if len(set(phi)) == t1.n and is_homomorphism(t1, t2, phi):
            return phi
        raise RuntimeError("isomorphism search produced an invalid map")  # pragma: no cover
    return None


def tables_isomorphic(t1: CayleyTable, t2: CayleyTable) -> bool:
    return find_isomorphism(t1, t2) is not None
