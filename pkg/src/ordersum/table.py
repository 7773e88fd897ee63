"""Indexed multiplication tables for desk-scale groups.

Elements are the integers ``0..n-1`` with ``0`` the identity; ``mul[a, b]`` is
the product "a then b".  Subsets of a table are numpy boolean masks.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np


def mask_key(mask: np.ndarray) -> bytes:
    return np.packbits(mask).tobytes()


class CayleyTable:
    """Multiplication table of a finite group with identity ``0``."""

    def __init__(self, mul: np.ndarray, *, check: bool = False):
        mul = np.ascontiguousarray(mul, dtype=np.int32)
        n = mul.shape[0]
        if mul.shape != (n, n):
            raise ValueError("multiplication table must be square")
        ar = np.arange(n, dtype=np.int32)
        if not (np.array_equal(mul[0], ar) and np.array_equal(mul[:, 0], ar)):
            raise ValueError("element 0 is not the identity")
        self.mul = mul
        self.n = n
        if check:
            self._check_group_axioms()

    def _check_group_axioms(self) -> None:
        n = self.n
        rows_ok = (np.sort(self.mul, axis=1) == np.arange(n)).all()
        cols_ok = (np.sort(self.mul, axis=0) == np.arange(n)[:, None]).all()
        if not (rows_ok and cols_ok):
            raise ValueError("table is not a Latin square")
        m = self.mul
        # (ab)c == a(bc) for all triples
        for a in range(n):
            if not np.array_equal(m[m[a]], m[a][m]):
                raise ValueError("table is not associative")

    @cached_property
    def inv(self) -> np.ndarray:
        return np.argmax(self.mul == 0, axis=1).astype(np.int32)

    @cached_property
    def orders(self) -> np.ndarray:
        n = self.n
        ar = np.arange(n)
        out = np.zeros(n, dtype=np.int64)
        cur = ar.copy()
        k = 0
        while (out == 0).any():
            k += 1
            cur = self.mul[cur, ar] if k > 1 else ar.copy()
            hit = (cur == 0) & (out == 0)
            out[hit] = k
        return out

    @cached_property
    def conj(self) -> np.ndarray:
        """``conj[g, a] = g^-1 a g``."""
        left = self.mul[self.inv]  # left[g, a] = g^-1 a
        return self.mul[left, np.arange(self.n)[:, None]]

    def power(self, x: int, k: int) -> int:
        r = 0
        for _ in range(k % int(self.orders[x])):
            r = int(self.mul[r, x])
        return r

    def cyclic(self, x: int) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        y = 0
        while True:
            mask[y] = True
            y = int(self.mul[y, x])
            if y == 0:
                return mask

    def closure(self, gens, start: np.ndarray | None = None) -> np.ndarray:
        """Subgroup generated by ``gens`` together with the set ``start``."""
        mask = np.zeros(self.n, dtype=bool)
        mask[0] = True
        gens = np.asarray(list(gens), dtype=np.int64)
        if start is not None:
            mask |= start
            gens = np.concatenate([gens, np.flatnonzero(start)])
        gens = np.unique(gens)
        if gens.size == 0:
            return mask
        frontier = np.flatnonzero(mask)
        while frontier.size:
            prod = self.mul[np.ix_(frontier, gens)].ravel()
            new = np.unique(prod[~mask[prod]])
            mask[new] = True
            frontier = new
        return mask

    def join(self, h: np.ndarray, k: np.ndarray) -> np.ndarray:
        return self.closure(np.concatenate([np.flatnonzero(h), np.flatnonzero(k)]))

    def extend_normalizing(self, h: np.ndarray, x: int) -> np.ndarray:
        """<H, x> for x in N(H): the union of the cosets H x^i."""
        hidx = np.flatnonzero(h)
        out = h.copy()
        y = x
        while not out[y]:
            out[self.mul[hidx, y]] = True
            y = int(self.mul[y, x])
        return out

    def normalizer(self, h: np.ndarray) -> np.ndarray:
        hidx = np.flatnonzero(h)
        return h[self.conj[:, hidx]].all(axis=1)

    def is_normal(self, h: np.ndarray) -> bool:
        hidx = np.flatnonzero(h)
        return bool(h[self.conj[:, hidx]].all())

    def core(self, h: np.ndarray) -> np.ndarray:
        """Intersection of all conjugates of H."""
        # conj[g] maps a -> g^-1 a g; a lies in H^g iff g a g^-1 in H
        inv = self.inv
        out = h.copy()
        for g in range(self.n):
            out &= h[self.conj[inv[g]]]
            if out.sum() == 1:
                break
        return out

    def normal_closure(self, gens, start: np.ndarray | None = None) -> np.ndarray:
        """Smallest normal subgroup containing ``gens`` and ``start``."""
        cur = self.closure(gens, start)
        while True:
            idx = np.flatnonzero(cur)
            conjugates = np.unique(self.conj[:, idx])
            if cur[conjugates].all():
                return cur
            cur = self.closure(conjugates)

    def commutator_subgroup(self, h: np.ndarray | None = None) -> np.ndarray:
        idx = np.arange(self.n) if h is None else np.flatnonzero(h)
        m, inv = self.mul, self.inv
        a = idx[:, None]
        b = idx[None, :]
        comms = m[m[inv[a], inv[b]], m[a, b]]
        return self.closure(np.unique(comms))

    @cached_property
    def center(self) -> np.ndarray:
        return (self.mul == self.mul.T).all(axis=1)

    @cached_property
    def centralizer_orders(self) -> np.ndarray:
        return (self.mul == self.mul.T).sum(axis=1)

    @cached_property
    def classes(self) -> list[np.ndarray]:
        """Conjugacy classes as sorted index arrays, ordered by representative."""
        seen = np.zeros(self.n, dtype=bool)
        out = []
        for x in range(self.n):
            if seen[x]:
                continue
            cls = np.unique(self.conj[:, x])
            seen[cls] = True
            out.append(cls)
        return out

    def is_abelian(self) -> bool:
        return bool(self.center.all())

    def subtable(self, h: np.ndarray) -> tuple[CayleyTable, np.ndarray]:
        """Table of a subgroup plus the map from its indices to ours."""
        idx = np.flatnonzero(h)
        pos = np.full(self.n, -1, dtype=np.int32)
        pos[idx] = np.arange(idx.size)
        sub = pos[self.mul[np.ix_(idx, idx)]]
        return CayleyTable(sub), idx

    def quotient(self, normal: np.ndarray) -> tuple[CayleyTable, np.ndarray]:
        """Table of G/N; also returns the coset label of every element."""
        label = np.full(self.n, -1, dtype=np.int32)
        nidx = np.flatnonzero(normal)
        k = 0
        for x in range(self.n):
            if label[x] < 0:
                label[self.mul[nidx, x]] = k
                k += 1
        reps = np.array([int(np.argmax(label == c)) for c in range(k)])
        qmul = label[self.mul[np.ix_(reps, reps)]]
        return CayleyTable(qmul), label


def sylow_mask(t: CayleyTable, p: int) -> np.ndarray:
    """A Sylow p-subgroup, grown one normalising p-element at a time.

    A p-subgroup P that is not Sylow has p | [N(P):P], so N(P) \\ P always
    holds a p-element of order p modulo P; the greedy step never gets stuck.
    """
    n = t.n
    target = 1
    while n % (target * p) == 0:
        target *= p
    pmask = np.zeros(n, dtype=bool)
    pmask[0] = True
    orders = t.orders
    is_pelt = np.array([_is_power_of(int(o), p) for o in orders])
    while pmask.sum() < target:
        norm = t.normalizer(pmask)
        cands = np.flatnonzero(norm & ~pmask & is_pelt)
        for x in cands:
            # order of x modulo P must be exactly p
            if pmask[t.power(int(x), p)]:
                pmask = t.extend_normalizing(pmask, int(x))
                break
        else:  # pragma: no cover - impossible by Sylow theory
            raise RuntimeError("Sylow growth stalled")
    return pmask


def _is_power_of(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1
