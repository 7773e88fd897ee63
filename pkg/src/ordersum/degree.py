"""Small-degree permutation representations of groups given by a Cayley table.

A group acts on the right cosets of any subgroup H, with kernel core(H).  A
union of such coset actions is faithful as soon as the cores intersect
trivially, so a faithful representation of degree sum |G:H_i| is found by
choosing subgroups greedily.  This is a heuristic: the result is small, not
guaranteed minimal.  The regular representation is the fallback.
"""

from __future__ import annotations

import numpy as np

from .group import FiniteGroup
from .isomorphism import generating_sequence
from .perm import Permutation
from .subgroups import subgroup_masks
from .table import CayleyTable

# subgroup enumeration is skipped above this order
DEGREE_SEARCH_BOUND = 512


def coset_action(t: CayleyTable, h: np.ndarray, gens: list[int]) -> list[list[int]]:
    """Images of the right cosets of ``h`` under right multiplication by each generator."""
    label = np.full(t.n, -1, dtype=np.int64)
    members = np.flatnonzero(h)
    k = 0
    for x in range(t.n):
        if label[x] < 0:
            label[t.mul[members, x]] = k
            k += 1
    reps = [int(np.flatnonzero(label == c)[0]) for c in range(k)]
    return [[int(label[t.mul[r, s]]) for r in reps] for s in gens]


def _solvable(t: CayleyTable) -> bool:
    h = np.ones(t.n, dtype=bool)
    while h.sum() > 1:
        d = t.commutator_subgroup(h)
        if d.sum() == h.sum():
            return False
        h = d
    return True


def _choose_subgroups(t: CayleyTable) -> list[np.ndarray] | None:
    masks = subgroup_masks(t, solvable=_solvable(t))
    cores = [t.core(m) for m in masks]
    sizes = [int(m.sum()) for m in masks]
    best_single = max((i for i in range(len(masks)) if cores[i].sum() == 1),
                      key=lambda i: sizes[i], default=None)
    single_degree = t.n // sizes[best_single] if best_single is not None else t.n

    kernel = np.ones(t.n, dtype=bool)
    chosen: list[int] = []
    degree = 0
    while kernel.sum() > 1:
        best = None
        for i, c in enumerate(cores):
            cut = int((kernel & c).sum())
            if cut == kernel.sum():
                continue
            score = (t.n // sizes[i], cut)
            if best is None or score < best[0]:
                best = (score, i)
        _, i = best
        chosen.append(i)
        degree += t.n // sizes[i]
        kernel &= cores[i]
    # drop choices made redundant by later ones, largest degree first
    for i in sorted(chosen, key=lambda i: sizes[i]):
        rest = [j for j in chosen if j != i]
        meet = np.ones(t.n, dtype=bool)
        for j in rest:
            meet &= cores[j]
        if rest and meet.sum() == 1:
            chosen = rest
            degree -= t.n // sizes[i]
    if degree < single_degree:
        return [masks[i] for i in chosen]
    if best_single is not None:
        return [masks[best_single]]
    return None


def small_degree_generators(t: CayleyTable) -> list[Permutation]:
    """Generators of a faithful permutation representation of ``t``.

    The generators are the images of a short generating sequence of the
    table.  Falls back to the right regular action when the search is
    skipped or finds nothing smaller.
    """
    gens = generating_sequence(t) or [0]
    subgroups = None
    if 1 < t.n <= DEGREE_SEARCH_BOUND:
        subgroups = _choose_subgroups(t)
    if subgroups is None:
        return [Permutation(t.mul[:, x].tolist(), zero_based=True) for x in gens]
    images = [[] for _ in gens]
    offset = 0
    for h in subgroups:
        action = coset_action(t, h, gens)
        for out, img in zip(images, action):
            out.extend(offset + v for v in img)
        offset += len(action[0])
    perms = [Permutation(img, zero_based=True) for img in images]
    if FiniteGroup(perms).order != t.n:  # pragma: no cover - cores meet trivially by construction
        raise RuntimeError("coset representation is not faithful")
    return perms
