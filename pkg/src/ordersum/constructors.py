"""Standard permutation groups and the named fixture groups.

Conventions: ``dihedral(n)`` has order ``2n``; in a semidirect product
``N : H`` a generator ``h`` of ``H`` acts on ``N`` by ``x -> h^-1 x h``,
which is how products compose here (``a * b`` applies ``a`` first).
"""

from __future__ import annotations

import math
import re
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .group import ELEMENT_CACHE_BOUND, CacheBoundExceeded, FiniteGroup
from .perm import Permutation, from_cycles, identity

# fixture groups and the psi value each one must have
FIXTURE_PSI = {
    "SL(2,3)": 99,
    "S4": 67,
    "C2xA4": 87,
    "(C2xC2):C9": 265,
    "(C3xC3):C4": 115,
    "C3xA4": 121,
    "(C5xC5):C3": 271,
    "(C5xC5):C9": 2197,
    "C3x((C5xC5):C3)": 1297,
    "((C5xC5):C5):C3": 3771,
    "C5x((C5xC5):C3)": 3771,
    "SmallGroup(32,7)": 167,
    "C2xD8": 39,
}

_ALIASES = {
    "(C8:C2):C2": "SmallGroup(32,7)",
    "((C8:C2):C2)": "SmallGroup(32,7)",
    "SL2,3": "SL(2,3)",
    "SL(2,F3)": "SL(2,3)",
}


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError(f"cyclic group needs n >= 1, got {n}")
    if n == 1:
        return FiniteGroup([identity(1)], name="C1")
    return FiniteGroup([from_cycles([range(1, n + 1)], n)], name=f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of a regular n-gon, of order 2n."""
    if n < 2:
        raise ValueError(f"dihedral group needs n >= 2, got {n}")
    if n == 2:
        gens = [from_cycles([(1, 2), (3, 4)], 4), from_cycles([(1, 3), (2, 4)], 4)]
    else:
        flip = [(i, n + 1 - i) for i in range(1, n // 2 + 1)]
        gens = [from_cycles([range(1, n + 1)], n), from_cycles(flip, n)]
    return FiniteGroup(gens, name=f"D{2 * n}")


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError(f"symmetric group needs n >= 1, got {n}")
    if n == 1:
        return FiniteGroup([identity(1)], name="S1")
    gens = [from_cycles([(1, 2)], n)]
    if n > 2:
        gens.append(from_cycles([range(1, n + 1)], n))
    return FiniteGroup(gens, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError(f"alternating group needs n >= 1, got {n}")
    if n < 3:
        return FiniteGroup([identity(n)], name=f"A{n}")
    gens = [from_cycles([(1, 2, k)], n) for k in range(3, n + 1)]
    return FiniteGroup(gens, name=f"A{n}")


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    """Product acting on the disjoint union of the factors' points."""
    if not groups:
        raise ValueError("direct product of no groups")
    order = math.prod(g.order for g in groups)
    if order > ELEMENT_CACHE_BOUND:
        raise CacheBoundExceeded(f"product order {order} exceeds element cache bound")
    degree = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for g in groups:
        for p in g.generators:
            img = list(range(degree))
            for i, j in enumerate(p.array_form):
                img[offset + i] = offset + j
            gens.append(Permutation._raw(tuple(img)))
        offset += g.degree
    name = "x".join(g.name or "?" for g in groups)
    return FiniteGroup(gens, name=name)


def _automorphism_map(n: FiniteGroup, images: Sequence[Permutation]) -> list[int]:
    """Full image list of the map sending n.generators to ``images``; checked."""
    if len(images) != len(n.generators):
        raise ValueError("automorphism must give one image per generator of N")
    t = n.table
    gens = [n.index_of(p) for p in n.generators]
    try:
        imgs = [n.index_of(p) for p in images]
    except KeyError:
        raise ValueError("automorphism image is not an element of N") from None
    phi = [-1] * t.n
    phi[0] = 0
    queue = [0]
    for a in queue:
        for s, si in zip(gens, imgs):
            b = int(t.mul[a, s])
            pb = int(t.mul[phi[a], si])
            if phi[b] < 0:
                phi[b] = pb
                queue.append(b)
            elif phi[b] != pb:
                raise ValueError("generator images do not define a homomorphism")
    if sorted(phi) != list(range(t.n)):
        raise ValueError("generator images do not define a bijection")
    for a in range(t.n):
        for s, si in zip(gens, imgs):
            if phi[int(t.mul[a, s])] != int(t.mul[phi[a], si]):
                raise ValueError("generator images do not define a homomorphism")
    return phi


def semidirect_product(n: FiniteGroup, h: FiniteGroup,
                       action: Sequence[Sequence[Permutation]]) -> FiniteGroup:
    """N : H where ``action[i][j]`` is the image of ``n.generators[j]`` under
    conjugation by ``h.generators[i]``.

    Realized on |N| + deg(H) points: N acts on its own elements by right
    multiplication, each generator of H by its automorphism on the N part and
    by its own permutation on the remaining points.  Actions that do not
    respect the relations of H are caught by the order check.
    """
    if len(action) != len(h.generators):
        raise ValueError("action needs one automorphism per generator of H")
    if n.order * h.order > ELEMENT_CACHE_BOUND:
        raise CacheBoundExceeded("semidirect product exceeds element cache bound")
    t = n.table
    size = t.n
    degree = size + h.degree
    gens = []
    for p in n.generators:
        col = t.mul[:, n.index_of(p)].tolist()
        gens.append(Permutation._raw(tuple(col) + tuple(range(size, degree))))
    for q, images in zip(h.generators, action):
        phi = _automorphism_map(n, images)
        gens.append(Permutation._raw(tuple(phi) + tuple(size + j for j in q.array_form)))
    g = FiniteGroup(gens, name=f"({n.name or 'N'}):({h.name or 'H'})")
    if g.order != n.order * h.order:
        raise ValueError(f"action is not a homomorphism H -> Aut(N): order {g.order}, "
                         f"expected {n.order * h.order}")
    return g


def normalize_name(name: str) -> str:
    """Canonical spelling of a fixture name (ASCII, no spaces)."""
    table = str.maketrans("₀₁₂₃₄₅₆₇₈₉×⋊⋉", "0123456789x::")
    s = re.sub(r"\s+", "", name.translate(table))
    return _ALIASES.get(s, s)


@lru_cache(maxsize=1)
def _fixtures() -> dict:
    from .catalog import parse_catalog
    from .psi import psi

    text = (resources.files("ordersum") / "data" / "fixtures.txt").read_text(encoding="utf-8")
    out = {}
    for entry in parse_catalog(text, "fixtures.txt"):
        g = entry.group
        if g.order != entry.order:
            raise ValueError(f"fixture {entry.name}: order {g.order}, declared {entry.order}")
        expected = FIXTURE_PSI.get(entry.name)
        if expected is None or psi(g) != expected or entry.expected_psi != expected:
            raise ValueError(f"fixture {entry.name}: psi check failed")
        out[entry.name] = entry
    missing = set(FIXTURE_PSI) - set(out)
    if missing:
        raise ValueError(f"fixtures file lacks {sorted(missing)}")
    return out


def fixture_names() -> list[str]:
    return list(FIXTURE_PSI)


def paper_group(name: str) -> FiniteGroup:
    """One of the fixed named groups, e.g. ``"SL(2,3)"`` or ``"(C5xC5):C3"``.

    Realizations are read from the bundled fixtures file; each is checked for
    order and psi when the file is first loaded.
    """
    key = normalize_name(name)
    entries = _fixtures()
    if key not in entries:
        raise KeyError(f"unknown fixture group {name!r}; known: {', '.join(FIXTURE_PSI)}")
    e = entries[key]
    return FiniteGroup(e.generators, name=e.name)
