import pytest

from ordersum.constructors import (FIXTURE_PSI, alternating, cyclic, dihedral, direct_product, fixture_names,
                                   normalize_name, paper_group, semidirect_product, symmetric)
from ordersum.perm import parse_cycles
from ordersum.psi import psi
from ordersum.subgroups import is_abelian, is_isomorphic


def test_families():
    assert cyclic(1).order == 1
    assert dihedral(2).order == 4 and is_abelian(dihedral(2))
    assert dihedral(5).order == 10 and dihedral(5).name == "D10"
    assert symmetric(1).order == 1 and symmetric(2).order == 2
    assert alternating(2).order == 1 and alternating(6).order == 360
    for bad in (lambda: cyclic(0), lambda: dihedral(1), lambda: symmetric(0), lambda: alternating(0)):
        with pytest.raises(ValueError):
            bad()


def test_direct_product():
    g = direct_product(cyclic(2), dihedral(4))
    assert g.order == 16 and g.degree == 6
    assert psi(g) == 39
    with pytest.raises(ValueError):
        direct_product()


def test_semidirect_product_gives_dihedral():
    c5, c2 = cyclic(5), cyclic(2)
    inv = c5.generators[0] ** -1
    g = semidirect_product(c5, c2, [[inv]])
    assert g.order == 10
    assert is_isomorphic(g, dihedral(5))
    # trivial action gives the direct product
    assert is_abelian(semidirect_product(c5, c2, [[c5.generators[0]]]))


def test_semidirect_product_rejects_bad_actions():
    c5, c2, c4 = cyclic(5), cyclic(2), cyclic(4)
    with pytest.raises(ValueError):
        semidirect_product(c5, c2, [])
    with pytest.raises(ValueError):
        semidirect_product(c5, c2, [[parse_cycles("(1 2)", 5)]])
    # squaring has order 4 in Aut(C5), which does not factor through C2
    with pytest.raises(ValueError):
        semidirect_product(c5, c2, [[c5.generators[0] ** 2]])
    with pytest.raises(ValueError):
        semidirect_product(c4, c2, [[c4.generators[0] ** 2]])


def test_name_normalization():
    assert normalize_name("(C₅×C₅)⋊C₃") == "(C5xC5):C3"
    assert normalize_name(" C2 x A4 ") == "C2xA4"
    assert normalize_name("(C8:C2):C2") == "SmallGroup(32,7)"


@pytest.mark.parametrize("name", fixture_names())
def test_fixture_groups(name):
    g = paper_group(name)
    assert psi(g) == FIXTURE_PSI[name]
    assert g.name == name


def test_fixture_models():
    assert is_isomorphic(paper_group("S4"), symmetric(4))
    assert is_isomorphic(paper_group("C3xA4"), direct_product(cyclic(3), alternating(4)))


def test_unknown_fixture():
    with pytest.raises(KeyError):
        paper_group("M11")
