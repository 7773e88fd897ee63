import random

import numpy as np
import pytest

from ordersum.constructors import alternating, cyclic, dihedral, direct_product, paper_group, symmetric
from ordersum.isomorphism import (element_labels, find_isomorphism, fingerprint, is_homomorphism,
                                  iter_isomorphisms, tables_isomorphic)
from ordersum.table import CayleyTable


def relabel(t: CayleyTable, seed: int) -> CayleyTable:
    """Same group with its non-identity elements shuffled."""
    rng = np.random.default_rng(seed)
    perm = np.concatenate([[0], 1 + rng.permutation(t.n - 1)])
    inv = np.argsort(perm)
    return CayleyTable(perm[t.mul[np.ix_(inv, inv)]])


@pytest.mark.parametrize("g", [symmetric(4), dihedral(8), paper_group("SL(2,3)"),
                               paper_group("SmallGroup(32,7)"), direct_product(cyclic(2), alternating(4))])
def test_relabelled_copies(g, seed=7):
    t = g.table
    u = relabel(t, seed)
    assert fingerprint(t) == fingerprint(u)
    phi = find_isomorphism(t, u)
    assert phi is not None
    assert is_homomorphism(t, u, phi)
    assert sorted(phi) == list(range(t.n))


def test_non_isomorphic_same_order():
    assert not tables_isomorphic(dihedral(4).table, cyclic(8).table)
    # three groups of order 24
    assert not tables_isomorphic(symmetric(4).table, paper_group("SL(2,3)").table)
    assert not tables_isomorphic(symmetric(4).table, direct_product(cyclic(2), alternating(4)).table)
    assert find_isomorphism(cyclic(3).table, cyclic(4).table) is None


def test_automorphism_count():
    # |Aut(S4)| = 24 and |Aut(C2 x C2)| = 6
    t = symmetric(4).table
    assert sum(1 for _ in iter_isomorphisms(t, t)) == 24
    k = direct_product(cyclic(2), cyclic(2)).table
    assert sum(1 for _ in iter_isomorphisms(k, k)) == 6


def test_random_order_stream_is_still_valid():
    t = dihedral(6).table
    maps = list(iter_isomorphisms(t, t, rng=random.Random(3)))
    assert len(maps) == 12  # Aut(D12) has order 12
    assert all(is_homomorphism(t, t, m) for m in maps)


def test_labels_are_cached_and_invariant():
    t = alternating(4).table
    a = element_labels(t)
    assert element_labels(t) is a
    u = relabel(t, 1)
    assert sorted(a.tolist()) == sorted(element_labels(u).tolist())


def test_is_homomorphism_rejects_bad_map():
    t = cyclic(4).table
    assert not is_homomorphism(t, t, [0, 1, 1, 1])
