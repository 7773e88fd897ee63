"""Search for concrete realizations of the named fixture groups.

Each semidirect product ``N : C_m`` is searched over the automorphisms of N
whose m-th power is trivial; candidates are kept when their psi matches the
required value, then reduced up to isomorphism.  The first surviving
realization is written in catalog format to ``src/ordersum/data/fixtures.txt``.

For the order-32 group the search runs over the chains (C8 : C2) : C2 and
keeps groups with psi 167 that have a maximal subgroup isomorphic to C2 x D8
with psi 39; the script fails unless exactly one isomorphism class survives.

Usage::

    python tools/find_fixtures.py [--out PATH]
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from ordersum.catalog import CatalogEntry, format_entry
from ordersum.constructors import (FIXTURE_PSI, alternating, cyclic, dihedral, direct_product,
                                   semidirect_product, symmetric)
from ordersum.group import FiniteGroup
from ordersum.isomorphism import fingerprint, iter_isomorphisms
from ordersum.perm import parse_cycles
from ordersum.psi import psi
from ordersum.subgroups import is_isomorphic, maximal_subgroups

log = logging.getLogger("find_fixtures")

DATA = Path(__file__).resolve().parents[1] / "src" / "ordersum" / "data"


def automorphisms(n: FiniteGroup, m: int) -> list[list[int]]:
    """Automorphisms of n (as element image lists) with alpha^m = 1, one per cyclic subgroup."""
    t = n.table
    ident = np.arange(t.n)
    seen = set()
    out = []
    for phi in iter_isomorphisms(t, t):
        a = np.asarray(phi)
        powers = [ident]
        for _ in range(m):
            powers.append(a[powers[-1]])
        if not np.array_equal(powers[m], ident):
            continue
        key = min(tuple(powers[k].tolist()) for k in range(1, m + 1) if np.gcd(k, m) == 1)
        if key in seen:
            continue
        seen.add(key)
        out.append(phi)
    return out


def extensions(n: FiniteGroup, m: int, target: int) -> list[FiniteGroup]:
    """Pairwise non-isomorphic N : C_m with the given psi."""
    h = cyclic(m)
    elems = n.elements()
    gen_idx = [n.index_of(p) for p in n.generators]
    found: list[FiniteGroup] = []
    for phi in automorphisms(n, m):
        images = [elems[phi[i]] for i in gen_idx]
        g = semidirect_product(n, h, [images])
        if psi(g) != target:
            continue
        if any(fingerprint(g.table) == fingerprint(f.table) and is_isomorphic(g, f) for f in found):
            continue
        found.append(g)
    return found


def quaternion() -> FiniteGroup:
    return FiniteGroup([parse_cycles("(1 2 3 4)(5 6 7 8)"), parse_cycles("(1 5 3 7)(2 8 4 6)")], name="Q8")


def pick(name: str, candidates: list[FiniteGroup]) -> FiniteGroup:
    if not candidates:
        raise SystemExit(f"no realization found for {name}")
    log.info("%s: %d isomorphism class(es) with psi %d", name, len(candidates), FIXTURE_PSI[name])
    g = candidates[0]
    g.name = name
    return g


def order32_group() -> tuple[FiniteGroup, int]:
    c2xd8 = direct_product(cyclic(2), dihedral(4))
    level1 = extensions_any(cyclic(8), 2)
    found: list[FiniteGroup] = []
    for n in level1:
        for g in extensions_any(n, 2):
            if psi(g) != FIXTURE_PSI["SmallGroup(32,7)"]:
                continue
            if not any(m.order == 16 and psi(m.as_group()) == 39 and is_isomorphic(m.as_group(), c2xd8)
                       for m in maximal_subgroups(g)):
                continue
            if any(is_isomorphic(g, f) for f in found):
                continue
            found.append(g)
    return pick("SmallGroup(32,7)", found), len(found)


def extensions_any(n: FiniteGroup, m: int) -> list[FiniteGroup]:
    """Every N : C_m up to isomorphism."""
    h = cyclic(m)
    elems = n.elements()
    gen_idx = [n.index_of(p) for p in n.generators]
    out: list[FiniteGroup] = []
    for phi in automorphisms(n, m):
        g = semidirect_product(n, h, [[elems[phi[i]] for i in gen_idx]])
        if not any(is_isomorphic(g, f) for f in out):
            out.append(g)
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DATA / "fixtures.txt")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    c2, c3, c5 = cyclic(2), cyclic(3), cyclic(5)
    a4 = alternating(4)
    c5x5 = direct_product(c5, c5)
    groups: dict[str, FiniteGroup] = {}
    groups["SL(2,3)"] = pick("SL(2,3)", extensions(quaternion(), 3, FIXTURE_PSI["SL(2,3)"]))
    groups["S4"] = symmetric(4)
    groups["C2xA4"] = direct_product(c2, a4)
    groups["(C2xC2):C9"] = pick("(C2xC2):C9", extensions(direct_product(c2, c2), 9, FIXTURE_PSI["(C2xC2):C9"]))
    groups["(C3xC3):C4"] = pick("(C3xC3):C4", extensions(direct_product(c3, c3), 4, FIXTURE_PSI["(C3xC3):C4"]))
    groups["C3xA4"] = direct_product(c3, a4)
    a75 = pick("(C5xC5):C3", extensions(c5x5, 3, FIXTURE_PSI["(C5xC5):C3"]))
    groups["(C5xC5):C3"] = a75
    groups["(C5xC5):C9"] = pick("(C5xC5):C9", extensions(c5x5, 9, FIXTURE_PSI["(C5xC5):C9"]))
    groups["C3x((C5xC5):C3)"] = direct_product(c3, a75)
    heis = extensions_any(c5x5, 5)
    heis = [g for g in heis if g.table.center.sum() == 5]
    cands = []
    for n in heis:
        cands += extensions(n, 3, FIXTURE_PSI["((C5xC5):C5):C3"])
    groups["((C5xC5):C5):C3"] = pick("((C5xC5):C5):C3", cands)
    groups["C5x((C5xC5):C3)"] = direct_product(c5, a75)
    g32, classes = order32_group()
    if classes != 1:
        raise SystemExit(f"order-32 search found {classes} classes, expected exactly one")
    groups["SmallGroup(32,7)"] = g32
    groups["C2xD8"] = direct_product(c2, dihedral(4))

    lines = [
        "# Named fixture groups, found by tools/find_fixtures.py.",
        "# Same format as catalog.txt: order:index:name:degree:gen1;gen2;...:psi",
    ]
    per_order: dict[int, int] = {}
    for name, g in groups.items():
        value = psi(g)
        if value != FIXTURE_PSI[name]:
            raise SystemExit(f"{name}: psi {value}, expected {FIXTURE_PSI[name]}")
        per_order[g.order] = per_order.get(g.order, 0) + 1
        entry = CatalogEntry(g.order, per_order[g.order], name, g.degree, tuple(g.generators), value)
        lines.append(format_entry(entry))
        log.info("%-18s order %4d degree %3d psi %d", name, g.order, g.degree, value)
    args.out.write_text("\n".join(lines) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
