"""Permutations on the points ``1..degree``.

Points are 1-based in every textual form.  Internally a permutation keeps a
0-based image tuple (``array_form``) so it can index numpy arrays directly.

Composition is "left then right": ``a * b`` maps ``i`` to ``b(a(i))``.

Cycle notation grammar used by the catalog, the fixtures file and the CLI::

    perm    := [ "deg=" INT ] cycles
    cycles  := "()" | cycle { cycle }
    cycle   := "(" INT { sep INT } ")"
    sep     := whitespace | ","

Fixed points may be omitted.  Without ``deg=`` the degree is the largest
point mentioned, unless the caller supplies one.
"""

from __future__ import annotations

import math
import re
from functools import reduce
from typing import Iterable, Sequence


class Permutation:
    """Immutable bijection on ``{1..degree}``."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int], *, zero_based: bool = False):
        img = tuple(int(i) for i in images) if zero_based else tuple(int(i) - 1 for i in images)
        if not img:
            raise ValueError("degree must be at least 1")
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"not a permutation of 1..{len(img)}: {images!r}")
        self._img = img
        self._hash = hash(img)

    @classmethod
    def _raw(cls, img: tuple[int, ...]) -> Permutation:
        # trusted constructor for internal hot paths
        p = object.__new__(cls)
        p._img = img
        p._hash = hash(img)
        return p

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def array_form(self) -> tuple[int, ...]:
        return self._img

    @property
    def images(self) -> tuple[int, ...]:
        """1-based images: ``images[i-1]`` is the image of point ``i``."""
        return tuple(i + 1 for i in self._img)

    def __call__(self, point: int) -> int:
        return self._img[point - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return inverse(self) ** (-k)
        result = identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def __invert__(self) -> Permutation:
        return inverse(self)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __lt__(self, other: Permutation) -> bool:
        return self._img < other._img

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        return format_cycles(self)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its smallest point."""
        seen = [False] * len(self._img)
        out = []
        for start in range(len(self._img)):
            if seen[start] or self._img[start] == start:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self._img[j]
            out.append(tuple(cyc))
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._img))


def identity(degree: int) -> Permutation:
    if degree < 1:
        raise ValueError("degree must be at least 1")
    return Permutation._raw(tuple(range(degree)))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``a`` then ``b``."""
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    bi = b._img
    return Permutation._raw(tuple(bi[i] for i in a._img))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, j in enumerate(p._img):
        inv[j] = i
    return Permutation._raw(tuple(inv))


def order_of(p: Permutation) -> int:
    """Least k >= 1 with p**k = identity (lcm of the cycle lengths)."""
    return reduce(math.lcm, (len(c) for c in p.cycles()), 1)


def from_cycles(cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
    img = list(range(degree))
    touched: set[int] = set()
    for cyc in cycles:
        for pt in cyc:
            if not 1 <= pt <= degree:
                raise ValueError(f"point {pt} outside 1..{degree}")
            if pt in touched:
                raise ValueError(f"point {pt} appears in more than one cycle")
            touched.add(pt)
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a - 1] = b - 1
    return Permutation._raw(tuple(img))


_DEG_RE = re.compile(r"^\s*deg\s*=\s*(\d+)\s*")
_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Permutation:
    """Parse cycle notation such as ``"deg=4 (1 2 3)(4)"`` or ``"(1,2)(3,4)"``."""
    m = _DEG_RE.match(text)
    if m:
        declared = int(m.group(1))
        if degree is not None and declared != degree:
            raise ValueError(f"declared degree {declared} != expected {degree}")
        degree = declared
        text = text[m.end():]
    body = text.strip()
    cycles = []
    pos = 0
    for cm in _CYCLE_RE.finditer(body):
        if body[pos:cm.start()].strip():
            raise ValueError(f"unexpected text {body[pos:cm.start()]!r} in {text!r}")
        pos = cm.end()
        inner = cm.group(1).replace(",", " ").split()
        try:
            cyc = [int(tok) for tok in inner]
        except ValueError:
            raise ValueError(f"bad cycle {cm.group(0)!r}") from None
        if cyc:
            cycles.append(cyc)
    if body[pos:].strip() or (not body and degree is None):
        raise ValueError(f"cannot parse permutation {text!r}")
    top = max((max(c) for c in cycles), default=1)
    if degree is None:
        degree = top
    if degree < 1:
        raise ValueError("degree must be at least 1")
    return from_cycles(cycles, degree)


def format_cycles(p: Permutation, with_degree: bool = False) -> str:
    body = "".join("(" + " ".join(map(str, c)) + ")" for c in p.cycles()) or "()"
    return f"deg={p.degree} {body}" if with_degree else body
