import pytest

from ordersum.constructors import alternating, cyclic, dihedral, direct_product, paper_group, symmetric
from ordersum.perm import parse_cycles
from ordersum.subgroups import (EnumerationBoundExceeded, all_subgroups, center, chief_factor_orders, core,
                                cyclic_subgroups, derived_series, intersection, is_abelian, is_central,
                                is_cyclic, is_isomorphic, is_nilpotent, is_normal, is_solvable,
                                is_supersolvable, maximal_subgroups, normal_subgroups, normalizer, quotient,
                                subgroup, supersolvable_screen, sylow, trivial, whole)


@pytest.mark.parametrize("g, count", [
    (symmetric(4), 30), (alternating(5), 59), (dihedral(4), 10), (alternating(4), 10),
    (direct_product(cyclic(2), cyclic(2), cyclic(2)), 16), (paper_group("SL(2,3)"), 15),
])
def test_subgroup_counts(g, count):
    subs = all_subgroups(g)
    assert len(subs) == count
    assert all(g.order % h.order == 0 for h in subs)


def test_normal_and_maximal():
    s4 = symmetric(4)
    assert [h.order for h in normal_subgroups(s4)] == [1, 4, 12, 24]
    assert sorted(h.order for h in maximal_subgroups(s4)) == [6, 6, 6, 6, 8, 8, 8, 12]
    assert [h.order for h in normal_subgroups(alternating(5))] == [1, 60]


def test_cyclic_subgroups_of_s3():
    assert sorted(h.order for h in cyclic_subgroups(symmetric(3))) == [1, 2, 2, 2, 3]


def test_handles_and_operations():
    s4 = symmetric(4)
    h = subgroup(s4, [parse_cycles("(1 2)", 4)])
    assert h.order == 2 and h.index == 12
    assert not is_normal(h)
    assert core(h).order == 1
    assert normalizer(h).order == 4
    assert parse_cycles("(1 2)", 4) in h
    assert intersection(h, whole(s4)) == h
    assert trivial(s4).order == 1
    with pytest.raises(ValueError):
        subgroup(s4, [parse_cycles("(1 5)", 5)])


def test_center_and_quotient():
    d8 = dihedral(4)
    z = center(d8)
    assert z.order == 2 and is_central(z)
    q = quotient(d8, z)
    assert q.order == 4 and is_abelian(q) and not is_cyclic(q)
    with pytest.raises(ValueError):
        quotient(d8, subgroup(d8, [d8.generators[1]]))


def test_sylow_orders():
    s4 = symmetric(4)
    assert sylow(s4, 2).order == 8
    assert sylow(s4, 3).order == 3
    assert sylow(s4, 5).order == 1
    with pytest.raises(ValueError):
        sylow(s4, 4)


@pytest.mark.parametrize("g, solv, nilp, ssolv", [
    (cyclic(12), True, True, True),
    (dihedral(4), True, True, True),
    (symmetric(3), True, False, True),
    (alternating(4), True, False, False),
    (symmetric(4), True, False, False),
    (paper_group("SL(2,3)"), True, False, False),
    (alternating(5), False, False, False),
])
def test_predicates(g, solv, nilp, ssolv):
    assert is_solvable(g) == solv
    assert is_nilpotent(g) == nilp
    assert is_supersolvable(g) == ssolv
    assert supersolvable_screen(g) == ssolv


def test_series():
    s4 = symmetric(4)
    assert [h.order for h in derived_series(s4)] == [24, 12, 4, 1]
    assert sorted(chief_factor_orders(s4)) == [2, 3, 4]
    assert chief_factor_orders(alternating(5)) == [60]


def test_isomorphism_wrapper():
    assert is_isomorphic(dihedral(3), symmetric(3))
    assert not is_isomorphic(cyclic(6), symmetric(3))
    assert not is_isomorphic(cyclic(6), cyclic(5))


def test_enumeration_bound():
    with pytest.raises(EnumerationBoundExceeded):
        all_subgroups(symmetric(5), bound=100)
