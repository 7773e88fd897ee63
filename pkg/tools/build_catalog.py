"""Offline generator for the bundled small-groups catalog.

Every solvable group G of order n has a normal subgroup N of prime index p, so
G = <N, g> with g acting on N by an automorphism a (g^-1 x g = a(x)) and
g^p = z in N, where a^p is conjugation by z and a(z) = z.  Conversely every
such (N, a, z) defines a group of order p|N|.  Running over all N of order
n/p (already complete by induction) and all admissible (a, z) up to the
obvious equivalences therefore produces every solvable group of order n;
A5 is the only nonsolvable group of order <= 100 and is added by hand.

Candidates are deduplicated by invariant fingerprint plus explicit
isomorphism search.  Automorphism groups up to ``--exhaustive-limit`` are
enumerated completely and reduced to conjugacy classes; larger ones are
sampled (product replacement), and sampling for an order stops as soon as the
number of pairwise non-isomorphic groups reaches the published count.  The
output is therefore certified complete by the counts table.

Usage::

    python tools/build_catalog.py --max-order 100 --out src/ordersum/data/catalog.txt
"""

from __future__ import annotations

import argparse
import logging
import math
import random
import sys
import time
from pathlib import Path

import numpy as np

from ordersum.group import StabilizerChain, closure_elements
from ordersum.isomorphism import element_labels, fingerprint, iter_isomorphisms, tables_isomorphic
from ordersum.perm import Permutation
from ordersum.table import CayleyTable

log = logging.getLogger("build_catalog")

DATA = Path(__file__).resolve().parents[1] / "src" / "ordersum" / "data"


def read_counts(path: Path) -> dict[int, int]:
    counts = {}
    for line in path.read_text().splitlines():
        if not line.strip() or line.startswith("#") or line.startswith("order"):
            continue
        a, b = line.split("\t")
        counts[int(a)] = int(b)
    return counts


def primes_dividing(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _compose(a: tuple, b: tuple) -> tuple:
    return tuple(b[i] for i in a)


def _power(a: tuple, k: int) -> tuple:
    out = tuple(range(len(a)))
    for _ in range(k):
        out = _compose(out, a)
    return out


class Extender:
    """Cyclic extensions of one group N by a prime p."""

    def __init__(self, N: CayleyTable, p: int, rng: random.Random):
        self.N = N
        self.p = p
        self.rng = rng
        self.m = N.n
        conj = N.conj
        self.inner: dict[tuple, list[int]] = {}
        for z in range(self.m):
            self.inner.setdefault(tuple(conj[z].tolist()), []).append(z)
        self.center = np.flatnonzero(N.center).tolist()
        self._aut_gens = None
        self._aut_order = None

    # automorphisms -------------------------------------------------------
    def aut_gens(self) -> list[tuple]:
        if self._aut_gens is None:
            gens: list[tuple] = []
            order = 1
            stable = 0
            rng = random.Random(self.rng.random())
            while stable < 6:
                phi = next(iter_isomorphisms(self.N, self.N, rng=rng))
                cand = tuple(phi)
                new_order = StabilizerChain(gens + [cand], self.m).order
                if new_order > order:
                    gens.append(cand)
                    order = new_order
                    stable = 0
                else:
                    stable += 1
            self._aut_gens = gens or [tuple(range(self.m))]
            self._aut_order = order
        return self._aut_gens

    def aut_order(self) -> int:
        self.aut_gens()
        return self._aut_order

    def class_reps(self) -> list[tuple]:
        """Conjugacy class representatives of the (generated) automorphism group."""
        gens = self.aut_gens()
        perms = [Permutation(g, zero_based=True) for g in gens]
        elems = closure_elements(perms, self.m)
        inv_gens = [_inverse(g) for g in gens]
        seen: set[tuple] = set()
        reps = []
        for a in elems:
            if a in seen:
                continue
            reps.append(a)
            seen.add(a)
            queue = [a]
            for x in queue:
                for s, si in zip(gens, inv_gens):
                    y = _compose(_compose(si, x), s)
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        return reps

    def random_auts(self):
        gens = self.aut_gens()
        pool = list(gens) * max(1, 8 // len(gens) + 1)
        pool = pool[:max(8, len(gens))]
        rng = self.rng
        for _ in range(40):
            self._pr_step(pool, rng)
        while True:
            yield self._pr_step(pool, rng)

    @staticmethod
    def _pr_step(pool, rng):
        i, j = rng.sample(range(len(pool)), 2)
        b = pool[j] if rng.random() < 0.5 else _inverse(pool[j])
        pool[i] = _compose(pool[i], b) if rng.random() < 0.5 else _compose(b, pool[i])
        return pool[i]

    def out_p_part(self, beta: tuple) -> tuple | None:
        """A power of beta whose image in Out(N) has order p, or None."""
        k = 1
        cur = beta
        while cur not in self.inner:
            cur = _compose(cur, beta)
            k += 1
        if k % self.p:
            return None
        return _power(beta, k // self.p)

    # extensions ----------------------------------------------------------
    def z_choices(self, alpha: tuple) -> list[int]:
        ap = _power(alpha, self.p)
        zs = self.inner.get(ap)
        if zs is None:
            return []
        zs = [z for z in zs if alpha[z] == z]
        if not zs:
            return []
        mul = self.N.mul
        # z ~ z * (a^{p-1}(c) ... a(c) c) for central c
        norms = set()
        for c in self.center:
            x = 0
            y = c
            for _ in range(self.p):
                x = int(mul[y, x])  # x <- y * x, with y = a^i(c)
                y = alpha[y]
            norms.add(x)
        norm_group = _closure_set(mul, norms)
        reps = []
        seen = set()
        for z in sorted(zs):
            if z in seen:
                continue
            reps.append(z)
            for c in norm_group:
                seen.add(int(mul[z, c]))
        return reps

    def build(self, alpha: tuple, z: int) -> CayleyTable:
        m, p, N = self.m, self.p, self.N.mul
        apows = [np.arange(m)]
        for _ in range(1, p):
            apows.append(np.asarray(alpha)[apows[-1]])
        mul = np.empty((p * m, p * m), dtype=np.int32)
        for i in range(p):
            for j in range(p):
                block = N[apows[j]]  # block[a, b] = a^j(a) * b
                k = i + j
                if k >= p:
                    block = N[z][block]
                    k -= p
                mul[i * m:(i + 1) * m, j * m:(j + 1) * m] = block + k * m
        return CayleyTable(mul)


def _inverse(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def _closure_set(mul, gens) -> list[int]:
    seen = {0}
    queue = [0]
    for x in queue:
        for g in gens:
            y = int(mul[x, g])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return queue


class Registry:
    """Pairwise non-isomorphic groups of one order."""

    def __init__(self):
        self.groups: list[CayleyTable] = []
        self.by_fp: dict[str, list[CayleyTable]] = {}
        self.candidates = 0

    def offer(self, t: CayleyTable) -> bool:
        self.candidates += 1
        fp = fingerprint(t)
        bucket = self.by_fp.setdefault(fp, [])
        for other in bucket:
            if tables_isomorphic(t, other):
                return False
        bucket.append(t)
        self.groups.append(t)
        return True

    def __len__(self):
        return len(self.groups)


def a5_table() -> CayleyTable:
    a = Permutation([2, 3, 1, 4, 5])
    b = Permutation([1, 2, 4, 5, 3])
    elems = sorted(closure_elements([a, b], 5))
    idx = {e: i for i, e in enumerate(elems)}
    mul = np.array([[idx[_compose(x, y)] for y in elems] for x in elems], dtype=np.int32)
    return CayleyTable(mul)


def build_order(n: int, lower: dict[int, list[CayleyTable]], target: int, args, rng) -> list[CayleyTable]:
    reg = Registry()
    if n == 1:
        reg.offer(CayleyTable(np.zeros((1, 1), dtype=np.int32)))
        return reg.groups
    if n == 60:
        reg.offer(a5_table())
    extenders = []
    for p in primes_dividing(n):
        for N in lower[n // p]:
            extenders.append(Extender(N, p, rng))
    big = []
    for ext in extenders:
        if len(reg) == target:
            break
        if ext.aut_order() <= args.exhaustive_limit:
            for alpha in ext.class_reps():
                if ext.out_p_part(alpha) is None and _power(alpha, ext.p) not in ext.inner:
                    continue
                for z in ext.z_choices(alpha):
                    reg.offer(ext.build(alpha, z))
                    if len(reg) == target:
                        break
                if len(reg) == target:
                    break
        else:
            ident = tuple(range(ext.m))
            for z in ext.z_choices(ident):
                reg.offer(ext.build(ident, z))
            big.append(ext)
    streams = [(ext, ext.random_auts()) for ext in big]
    budget = args.sample_budget
    rounds = 0
    while len(reg) < target and streams:
        rounds += 1
        for ext, stream in streams:
            tried = 0
            while tried < budget and len(reg) < target:
                alpha = ext.out_p_part(next(stream))
                tried += 1
                if alpha is None:
                    continue
                for z in ext.z_choices(alpha):
                    reg.offer(ext.build(alpha, z))
        log.info("order %d: round %d, %d/%d groups, %d candidates", n, rounds, len(reg), target, reg.candidates)
        budget *= 2
        if rounds > args.max_rounds:
            break
    return reg.groups


# ---------------------------------------------------------------------------
# output


def regular_generators(t: CayleyTable, gens: list[int]) -> list[Permutation]:
    # right regular action: point a -> a * x
    return [Permutation(t.mul[:, x].tolist(), zero_based=True) for x in gens]


def abelian_invariants(t: CayleyTable) -> list[int]:
    """Invariant factors of an abelian table, from element-order counts."""
    orders = t.orders.tolist()
    parts = []
    for p in primes_dividing(t.n):
        # count(o | p^k) = p^(sum min(e_i, k)) over the cyclic p-factors C_{p^e_i}
        ranks, prev, k = [], 1, 1
        while True:
            cnt = sum(1 for o in orders if p ** k % o == 0)
            if cnt == prev:
                break
            ranks.append(round(math.log(cnt // prev, p)))
            prev, k = cnt, k + 1
        exps = []
        for i, r in enumerate(ranks):
            nxt = ranks[i + 1] if i + 1 < len(ranks) else 0
            exps += [i + 1] * (r - nxt)
        parts.append((p, sorted(exps, reverse=True)))
    depth = max((len(e) for _, e in parts), default=0)
    factors = []
    for i in range(depth):
        f = 1
        for p, e in parts:
            if i < len(e):
                f *= p ** e[i]
        factors.append(f)
    return sorted(factors)


def sort_key(t: CayleyTable):
    orders = t.orders
    hist = tuple(np.bincount(orders, minlength=t.n + 1).tolist())
    derived = int(t.commutator_subgroup().sum())
    return (-int(np.lcm.reduce(orders)), derived, -int(t.center.sum()), -len(t.classes), hist, fingerprint(t))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=100)
    ap.add_argument("--out", type=Path, default=DATA / "catalog.txt")
    ap.add_argument("--counts", type=Path, default=DATA / "counts.tsv")
    ap.add_argument("--seed", type=int, default=20240611)
    ap.add_argument("--exhaustive-limit", type=int, default=50000)
    ap.add_argument("--sample-budget", type=int, default=200)
    ap.add_argument("--max-rounds", type=int, default=12)
    ap.add_argument("--min-order", type=int, default=1)
    ap.add_argument("--dry-run", action="store_true", help="build and count, write nothing")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(message)s")
    counts = read_counts(args.counts)
    rng = random.Random(args.seed)
    groups: dict[int, list[CayleyTable]] = {}
    failed = []
    for n in range(1, args.max_order + 1):
        t0 = time.time()
        found = build_order(n, groups, counts[n], args, rng)
        found.sort(key=sort_key)
        groups[n] = found
        status = "ok" if len(found) == counts[n] else "INCOMPLETE"
        if status != "ok":
            failed.append(n)
        log.warning("order %3d: %3d/%3d groups %s (%.1fs)", n, len(found), counts[n], status, time.time() - t0)
    if not args.dry_run:
        write_catalog(args.out, groups)
    if failed:
        print(f"incomplete orders: {failed}", file=sys.stderr)
        return 1
    return 0


def named_models(max_order: int) -> dict[int, list[tuple[str, CayleyTable]]]:
    """Tables of recognizable groups, used only to label catalog lines."""
    from ordersum.constructors import (FIXTURE_PSI, alternating, cyclic, dihedral, direct_product,
                                       paper_group, symmetric)
    from ordersum.group import FiniteGroup
    from ordersum.perm import parse_cycles

    quat = FiniteGroup([parse_cycles("(1 2 3 4)(5 6 7 8)"), parse_cycles("(1 5 3 7)(2 8 4 6)")])
    models = []
    for k in range(3, max_order // 2 + 1):
        models.append((f"D{2 * k}", dihedral(k)))
    models += [("Q8", quat), ("A4", alternating(4)), ("S4", symmetric(4)), ("A5", alternating(5))]
    for name in FIXTURE_PSI:
        g = paper_group(name)
        if g.order <= max_order:
            models.append((name, g))
    for base_name, base in [("S3", symmetric(3)), ("D8", dihedral(4)), ("Q8", quat), ("A4", alternating(4)),
                            ("D10", dihedral(5)), ("SL(2,3)", paper_group("SL(2,3)"))]:
        for m in range(2, max_order // base.order + 1):
            models.append((f"{base_name}xC{m}", direct_product(base, cyclic(m))))
    out: dict[int, list[tuple[str, CayleyTable]]] = {}
    for name, g in models:
        out.setdefault(g.order, []).append((name, g.table))
    return out


def group_name(t: CayleyTable, models) -> str:
    if t.is_abelian():
        return "x".join(f"C{f}" for f in abelian_invariants(t)) or "C1"
    fp = fingerprint(t)
    for name, m in models.get(t.n, []):
        if fingerprint(m) == fp and tables_isomorphic(t, m):
            return name
    return ""


def write_catalog(path: Path, groups: dict[int, list[CayleyTable]]) -> None:
    from ordersum.catalog import format_entry, CatalogEntry
    from ordersum.degree import small_degree_generators

    models = named_models(max(groups))
    lines = [
        "# ordersum small-groups catalog: every group of order <= %d up to isomorphism." % max(groups),
        "# Generated by tools/build_catalog.py (cyclic extensions, isomorphism-deduplicated,",
        "# completeness certified against counts.tsv).  Indices are this file's own numbering.",
        "# order:index:name:degree:gen1;gen2;...:psi",
    ]
    for n in sorted(groups):
        for k, t in enumerate(groups[n], start=1):
            gens = small_degree_generators(t)
            entry = CatalogEntry(order=n, index=k, name=group_name(t, models), degree=gens[0].degree,
                                 generators=tuple(gens), expected_psi=int(t.orders.sum()))
            lines.append(format_entry(entry))
        log.info("order %d written", n)
    path.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    sys.exit(main())
