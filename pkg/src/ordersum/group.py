"""Permutation groups given by generators.

The order of a group comes from a deterministic Schreier-Sims stabilizer
chain.  Exhaustive closure is available separately (``closure_order``) so the
two can be checked against each other.
"""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

import numpy as np

from .perm import Permutation, identity
from .table import CayleyTable

ELEMENT_CACHE_BOUND = 10**6
TABLE_BOUND = 5000


class CacheBoundExceeded(ValueError):
    """The group is too large for an operation that needs every element."""


def _mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(b[i] for i in a)


def _inv(a: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


class StabilizerChain:
    """Base and strong generating set built by deterministic Schreier-Sims."""

    def __init__(self, gens: Sequence[tuple[int, ...]], degree: int):
        self.degree = degree
        self._id = tuple(range(degree))
        gens = [g for g in dict.fromkeys(gens) if g != self._id]
        self.base: list[int] = []
        self.strong: list[list[tuple[int, ...]]] = []
        self.trans: list[dict[int, tuple[int, ...]]] = []
        for g in gens:
            if all(g[b] == b for b in self.base):
                self._new_level(next(i for i in range(degree) if g[i] != i))
        for lvl in range(len(self.base)):
            self.strong[lvl] = [g for g in gens if all(g[b] == b for b in self.base[:lvl])]
            self._orbit(lvl)
        self._complete()

    def _new_level(self, point: int) -> None:
        self.base.append(point)
        self.strong.append([])
        self.trans.append({point: self._id})

    def _orbit(self, lvl: int) -> None:
        b = self.base[lvl]
        trans = {b: self._id}
        queue = [b]
        for pt in queue:
            u = trans[pt]
            for s in self.strong[lvl]:
                q = s[pt]
                if q not in trans:
                    trans[q] = _mul(u, s)
                    queue.append(q)
        self.trans[lvl] = trans

    def sift(self, g: tuple[int, ...], start: int = 0) -> tuple[tuple[int, ...], int]:
        for lvl in range(start, len(self.base)):
            beta = g[self.base[lvl]]
            u = self.trans[lvl].get(beta)
            if u is None:
                return g, lvl
            g = _mul(g, _inv(u))
        return g, len(self.base)

    def _complete(self) -> None:
        lvl = len(self.base) - 1
        while lvl >= 0:
            restart = None
            for beta, u in list(self.trans[lvl].items()):
                for s in self.strong[lvl]:
                    schreier = _mul(_mul(u, s), _inv(self.trans[lvl][s[beta]]))
                    h, j = self.sift(schreier, lvl + 1)
                    if h == self._id:
                        continue
                    if j == len(self.base):
                        self._new_level(next(i for i in range(self.degree) if h[i] != i))
                    for l2 in range(lvl + 1, j + 1):
                        self.strong[l2].append(h)
                        self._orbit(l2)
                    restart = j
                    break
                if restart is not None:
                    break
            lvl = restart if restart is not None else lvl - 1

    @property
    def order(self) -> int:
        out = 1
        for t in self.trans:
            out *= len(t)
        return out

    def contains(self, g: tuple[int, ...]) -> bool:
        h, _ = self.sift(g)
        return h == self._id


def closure_elements(gens: Iterable[Permutation], degree: int, bound: int = ELEMENT_CACHE_BOUND) -> list[tuple[int, ...]]:
    """All elements reachable from the identity by right multiplication."""
    gens = [g.array_form for g in gens]
    start = tuple(range(degree))
    seen = {start}
    queue = [start]
    for x in queue:
        for g in gens:
            y = _mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if len(seen) > bound:
                    raise CacheBoundExceeded(f"group has more than {bound} elements")
    return queue


class FiniteGroup:
    """A permutation group; immutable once built.

    ``order`` is computed eagerly from a stabilizer chain.  The sorted element
    list and the Cayley table are computed on first use, once, under a lock.
    """

    def __init__(self, generators: Sequence[Permutation], *, name: str | None = None,
                 element_bound: int = ELEMENT_CACHE_BOUND):
        generators = tuple(generators)
        if not generators:
            raise ValueError("generator list is empty")
        degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"degree mismatch: {g.degree} vs {degree}")
        self.degree = degree
        self.generators = generators
        self.name = name
        self.element_bound = element_bound
        self._chain = StabilizerChain([g.array_form for g in generators], degree)
        self.order = self._chain.order
        self._guard = threading.RLock()
        self._elements: list[Permutation] | None = None
        self._index: dict[Permutation, int] | None = None
        self._table: CayleyTable | None = None

    def __repr__(self) -> str:
        label = f"{self.name!r}, " if self.name else ""
        return f"FiniteGroup({label}order={self.order}, degree={self.degree})"

    def __len__(self) -> int:
        return self.order

    def __contains__(self, p: Permutation) -> bool:
        return p.degree == self.degree and self._chain.contains(p.array_form)

    @property
    def chain(self) -> StabilizerChain:
        return self._chain

    def closure_order(self) -> int:
        return len(closure_elements(self.generators, self.degree, self.element_bound))

    def elements(self) -> list[Permutation]:
        """Every element, sorted lexicographically by image sequence."""
        if self._elements is None:
            with self._guard:
                if self._elements is None:
                    if self.order > self.element_bound:
                        raise CacheBoundExceeded(
                            f"|G| = {self.order} exceeds element cache bound {self.element_bound}")
                    raw = sorted(closure_elements(self.generators, self.degree, self.element_bound))
                    if len(raw) != self.order:  # pragma: no cover - BSGS/closure disagreement
                        raise RuntimeError(f"closure found {len(raw)} elements, chain says {self.order}")
                    self._index = {Permutation._raw(x): i for i, x in enumerate(raw)}
                    self._elements = list(self._index)
        return self._elements

    def index_of(self, p: Permutation) -> int:
        self.elements()
        return self._index[p]

    @property
    def table(self) -> CayleyTable:
        if self._table is None:
            elems = self.elements()
            with self._guard:
                if self._table is None:
                    if self.order > TABLE_BOUND:
                        raise CacheBoundExceeded(f"|G| = {self.order} exceeds table bound {TABLE_BOUND}")
                    self._table = CayleyTable(_build_table(elems, self._index, self._chain.base))
        return self._table

    def element_orders(self) -> np.ndarray:
        """Orders of ``elements()`` in the same sequence."""
        return self.table.orders


def _build_table(elems: list[Permutation], index: dict[Permutation, int], base: list[int]) -> np.ndarray:
    n = len(elems)
    E = np.array([p.array_form for p in elems], dtype=np.int64)
    if not base:
        return np.zeros((1, 1), dtype=np.int32)
    d = E.shape[1]
    # an element is determined by its base images
    radix = d ** np.arange(len(base), dtype=object)
    if d ** len(base) < 2**62:
        radix = radix.astype(np.int64)
        keys = E[:, base] @ radix
        order = np.argsort(keys)
        sorted_keys = keys[order]
        mul = np.empty((n, n), dtype=np.int32)
        for b in range(n):
            prod = E[b][E[:, base]]  # rows a: base images of a*b
            mul[:, b] = order[np.searchsorted(sorted_keys, prod @ radix)]
        return mul
    lookup = {E[i, base].tobytes(): i for i in range(n)}
    mul = np.empty((n, n), dtype=np.int32)
    for b in range(n):
        prod = np.ascontiguousarray(E[b][E[:, base]])
        mul[:, b] = [lookup[row.tobytes()] for row in prod]
    return mul


def generate(generators: Sequence[Permutation], **kwargs) -> FiniteGroup:
    return FiniteGroup(generators, **kwargs)


def trivial_group(degree: int = 1) -> FiniteGroup:
    return FiniteGroup([identity(degree)], name="C1")
