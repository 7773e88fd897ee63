"""Subgroups, normality, quotients, Sylow subgroups and structural predicates.

Subgroups of a :class:`FiniteGroup` are handled as boolean masks over the
parent's sorted element list (see :mod:`ordersum.table`); a
:class:`SubgroupHandle` wraps a mask with generators, order and index.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .factor import is_prime, prime_divisors
from .group import FiniteGroup
from .isomorphism import find_isomorphism
from .perm import Permutation
from .table import CayleyTable, mask_key, sylow_mask

SUBGROUP_ENUMERATION_BOUND = 512
ISOMORPHISM_BOUND = 512


class EnumerationBoundExceeded(ValueError):
    """The group is larger than the subgroup-enumeration bound."""


@dataclass(frozen=True, eq=False)
class SubgroupHandle:
    parent: FiniteGroup
    mask: np.ndarray = field(repr=False)
    generators: tuple[Permutation, ...]
    order: int
    index: int

    def __contains__(self, p: Permutation) -> bool:
        try:
            return bool(self.mask[self.parent.index_of(p)])
        except KeyError:
            return False

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SubgroupHandle) and other.parent is self.parent
                and np.array_equal(self.mask, other.mask))

    def __hash__(self) -> int:
        return hash(mask_key(self.mask))

    def __repr__(self) -> str:
        return f"SubgroupHandle(order={self.order}, index={self.index})"

    def elements(self) -> list[Permutation]:
        elems = self.parent.elements()
        return [elems[i] for i in np.flatnonzero(self.mask)]

    def as_group(self) -> FiniteGroup:
        gens = self.generators or (self.parent.elements()[0],)
        return FiniteGroup(gens)

    def sort_key(self) -> tuple:
        return (self.order, tuple(np.flatnonzero(self.mask).tolist()))


def _small_generating_set(t: CayleyTable, mask: np.ndarray) -> list[int]:
    orders = t.orders
    members = np.flatnonzero(mask)
    ranked = members[np.lexsort((members, -orders[members]))]
    cur = np.zeros(t.n, dtype=bool)
    cur[0] = True
    gens: list[int] = []
    for x in ranked:
        if cur.sum() == members.size:
            break
        if not cur[x]:
            gens.append(int(x))
            cur = t.extend_normalizing(cur, int(x)) if t.normalizer(cur)[x] else t.closure(gens)
    return gens


def handle(g: FiniteGroup, mask: np.ndarray) -> SubgroupHandle:
    t = g.table
    elems = g.elements()
    gens = tuple(elems[i] for i in _small_generating_set(t, mask))
    order = int(mask.sum())
    return SubgroupHandle(g, mask, gens, order, g.order // order)


def subgroup(g: FiniteGroup, generators) -> SubgroupHandle:
    """Subgroup of ``g`` generated by the given elements of ``g``."""
    idx = []
    for p in generators:
        try:
            idx.append(g.index_of(p))
        except KeyError:
            raise ValueError(f"{p} is not an element of the group") from None
    return handle(g, g.table.closure(idx))


def whole(g: FiniteGroup) -> SubgroupHandle:
    return SubgroupHandle(g, np.ones(g.order, dtype=bool), g.generators, g.order, 1)


def trivial(g: FiniteGroup) -> SubgroupHandle:
    mask = np.zeros(g.order, dtype=bool)
    mask[0] = True
    return SubgroupHandle(g, mask, (), 1, g.order)


def _memo(g: FiniteGroup, key: str, compute):
    cache = g.__dict__.setdefault("_memo", {})
    if key not in cache:
        with g._guard:
            if key not in cache:
                cache[key] = compute()
    return cache[key]


# -- enumeration -------------------------------------------------------------


def subgroup_masks(t: CayleyTable, solvable: bool) -> list[np.ndarray]:
    """Every subgroup of ``t`` as a mask, sorted by (order, element set).

    Solvable subgroups arise by cyclic extension: K has a normal subgroup H of
    prime index, and K = <H, x> for any x in K \\ H, where x normalises H.
    For nonsolvable groups the layers are closed under joins with cyclic
    subgroups as well.
    """
    triv = np.zeros(t.n, dtype=bool)
    triv[0] = True
    found = {mask_key(triv): triv}
    layers: dict[int, list[np.ndarray]] = {1: [triv]}
    size = 1
    while size <= t.n:
        for h in layers.get(size, []):
            norm = t.normalizer(h)
            covered = h.copy()
            for x in np.flatnonzero(norm & ~h):
                if covered[x]:
                    continue
                k = 1
                y = int(x)
                while not h[y]:
                    y = int(t.mul[y, x])
                    k += 1
                if not is_prime(k):
                    continue
                ext = t.extend_normalizing(h, int(x))
                covered |= ext
                key = mask_key(ext)
                if key not in found:
                    found[key] = ext
                    layers.setdefault(int(ext.sum()), []).append(ext)
        size += 1
    if not solvable:
        cyclics = {mask_key(c): c for c in (t.cyclic(x) for x in range(t.n))}
        queue = list(found.values())
        for h in queue:
            for c in cyclics.values():
                if (c <= h).all():
                    continue
                j = t.join(h, c)
                key = mask_key(j)
                if key not in found:
                    found[key] = j
                    queue.append(j)
    masks = list(found.values())
    masks.sort(key=lambda m: (int(m.sum()), tuple(np.flatnonzero(m).tolist())))
    return masks


def all_subgroups(g: FiniteGroup, bound: int = SUBGROUP_ENUMERATION_BOUND) -> list[SubgroupHandle]:
    if g.order > bound:
        raise EnumerationBoundExceeded(f"|G| = {g.order} exceeds subgroup bound {bound}")
    return _memo(g, "all_subgroups",
                 lambda: [handle(g, m) for m in subgroup_masks(g.table, is_solvable(g))])


def cyclic_subgroups(g: FiniteGroup) -> list[SubgroupHandle]:
    def compute():
        t = g.table
        seen = {}
        for x in range(t.n):
            c = t.cyclic(x)
            seen.setdefault(mask_key(c), c)
        masks = sorted(seen.values(), key=lambda m: (int(m.sum()), tuple(np.flatnonzero(m).tolist())))
        return [handle(g, m) for m in masks]
    return _memo(g, "cyclic_subgroups", compute)


def normal_subgroups(g: FiniteGroup) -> list[SubgroupHandle]:
    """Normal subgroups, found as joins of normal closures of single elements."""
    def compute():
        t = g.table
        triv = np.zeros(t.n, dtype=bool)
        triv[0] = True
        closures = {}
        for cls in t.classes:
            nc = t.normal_closure([int(cls[0])])
            closures.setdefault(mask_key(nc), nc)
        found = {mask_key(triv): triv}
        queue = [triv]
        for h in queue:
            for c in closures.values():
                if (c <= h).all():
                    continue
                j = t.normal_closure(np.flatnonzero(c), h)
                key = mask_key(j)
                if key not in found:
                    found[key] = j
                    queue.append(j)
        masks = sorted(found.values(), key=lambda m: (int(m.sum()), tuple(np.flatnonzero(m).tolist())))
        return [handle(g, m) for m in masks]
    return _memo(g, "normal_subgroups", compute)


def maximal_subgroups(g: FiniteGroup, bound: int = SUBGROUP_ENUMERATION_BOUND) -> list[SubgroupHandle]:
    def compute():
        subs = all_subgroups(g, bound)
        full = (1 << g.order) - 1
        ints = [(h, int.from_bytes(np.packbits(h.mask, bitorder="little").tobytes(), "little"))
                for h in subs]
        out = []
        for h, hi in ints:
            if h.order == g.order:
                continue
            if not any(k.order > h.order and k.order < g.order and k.order % h.order == 0
                       and ki & hi == hi for k, ki in ints):
                out.append(h)
        assert full  # trivial-group guard keeps the list empty
        return out
    return _memo(g, "maximal_subgroups", compute)


# -- normality, cores, quotients -------------------------------------------


def is_normal(h: SubgroupHandle) -> bool:
    return h.parent.table.is_normal(h.mask)


def core(h: SubgroupHandle) -> SubgroupHandle:
    return handle(h.parent, h.parent.table.core(h.mask))


def normalizer(h: SubgroupHandle) -> SubgroupHandle:
    return handle(h.parent, h.parent.table.normalizer(h.mask))


def center(g: FiniteGroup) -> SubgroupHandle:
    return handle(g, g.table.center.copy())


def is_central(h: SubgroupHandle) -> bool:
    return bool((h.parent.table.center[h.mask]).all())


def intersection(a: SubgroupHandle, b: SubgroupHandle) -> SubgroupHandle:
    return handle(a.parent, a.mask & b.mask)


def quotient(g: FiniteGroup, n: SubgroupHandle) -> FiniteGroup:
    """G/N as the permutation group induced on the right cosets of N."""
    if n.parent is not g:
        raise ValueError("subgroup belongs to a different group")
    t = g.table
    if not t.is_normal(n.mask):
        raise ValueError("quotient needs a normal subgroup")
    _, label = t.quotient(n.mask)
    k = int(label.max()) + 1
    reps = np.array([int(np.argmax(label == c)) for c in range(k)])
    gens = []
    for p in g.generators:
        x = g.index_of(p)
        gens.append(Permutation(label[t.mul[reps, x]].tolist(), zero_based=True))
    return FiniteGroup(gens)


def quotient_table(g: FiniteGroup, n: SubgroupHandle) -> CayleyTable:
    return g.table.quotient(n.mask)[0]


# -- Sylow ---------------------------------------------------------------------


def sylow(g: FiniteGroup, p: int) -> SubgroupHandle:
    """A Sylow p-subgroup (trivial when p does not divide |G|)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return _memo(g, f"sylow{p}", lambda: handle(g, sylow_mask(g.table, p)))


# -- predicates ------------------------------------------------------------------


def derived_series(g: FiniteGroup) -> list[SubgroupHandle]:
    def compute():
        t = g.table
        cur = np.ones(t.n, dtype=bool)
        series = [cur]
        while True:
            nxt = t.commutator_subgroup(cur)
            if nxt.sum() == cur.sum():
                break
            series.append(nxt)
            cur = nxt
        return [handle(g, m) for m in series]
    return _memo(g, "derived_series", compute)


def is_solvable(g: FiniteGroup) -> bool:
    return derived_series(g)[-1].order == 1


def is_nilpotent(g: FiniteGroup) -> bool:
    """All Sylow subgroups normal."""
    return all(is_normal(sylow(g, p)) for p in prime_divisors(g.order))


def is_abelian(g: FiniteGroup) -> bool:
    return g.table.is_abelian()


def is_cyclic(g: FiniteGroup) -> bool:
    return int(g.element_orders().max()) == g.order


def _minimal_normal_over(t: CayleyTable, n: np.ndarray) -> np.ndarray:
    """K with K/N a minimal normal subgroup of G/N (N normal, N != G)."""
    x = int(np.flatnonzero(~n)[0])
    best = t.normal_closure([x], n)
    improved = True
    while improved:
        improved = False
        size = best.sum()
        for y in np.flatnonzero(best & ~n):
            k = t.normal_closure([int(y)], n)
            if k.sum() < size:
                best = k
                improved = True
                break
    return best


def chief_series(g: FiniteGroup) -> list[SubgroupHandle]:
    """1 = N_0 < N_1 < ... < N_r = G with each N_i/N_{i-1} minimal normal in G/N_{i-1}."""
    def compute():
        t = g.table
        cur = np.zeros(t.n, dtype=bool)
        cur[0] = True
        series = [cur]
        while not cur.all():
            cur = _minimal_normal_over(t, cur)
            series.append(cur)
        return [handle(g, m) for m in series]
    return _memo(g, "chief_series", compute)


def chief_factor_orders(g: FiniteGroup) -> list[int]:
    s = chief_series(g)
    return [b.order // a.order for a, b in zip(s, s[1:])]


def supersolvable_screen(g: FiniteGroup, bound: int = SUBGROUP_ENUMERATION_BOUND) -> bool:
    """Solvable, and every maximal subgroup has prime index.

    This is a necessary condition for supersolvability.  (Huppert showed it is
    also sufficient, so a disagreement with the chief-series test in either
    direction indicates a bug.)
    """
    return is_solvable(g) and all(is_prime(m.index) for m in maximal_subgroups(g, bound))


def is_supersolvable(g: FiniteGroup, *, cross_check: bool = True,
                     bound: int = SUBGROUP_ENUMERATION_BOUND) -> bool:
    """Every chief factor has prime order.

    With ``cross_check`` (and |G| <= ``bound``) the maximal-subgroup screen is
    evaluated as well and any disagreement raises ``RuntimeError``.
    """
    def compute():
        if not is_solvable(g):
            return False
        return all(is_prime(k) for k in chief_factor_orders(g))
    verdict = _memo(g, "supersolvable", compute)
    if cross_check and g.order <= bound:
        screen = _memo(g, "supersolvable_screen", lambda: supersolvable_screen(g, bound))
        if screen != verdict:
            raise RuntimeError(f"supersolvability screen ({screen}) disagrees with chief series ({verdict})")
    return verdict


# -- isomorphism -------------------------------------------------------------------


def is_isomorphic(a: FiniteGroup, b: FiniteGroup, bound: int = ISOMORPHISM_BOUND) -> bool:
    """Backtracking isomorphism test (see :mod:`ordersum.isomorphism`)."""
    if a.order != b.order:
        return False
    if a.order > bound:
        raise EnumerationBoundExceeded(f"|G| = {a.order} exceeds isomorphism bound {bound}")
    ta, tb = a.table, b.table
    if not np.array_equal(np.sort(ta.orders), np.sort(tb.orders)):
        return False
    if ta.center.sum() != tb.center.sum():
        return False
    return find_isomorphism(ta, tb) is not None
