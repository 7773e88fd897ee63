"""Threshold checks, the subgroup-index inequality, and the inequality battery.

Every check returns a :class:`CheckOutcome`.  A ``VIOLATION`` verdict means a
statement's hypothesis held and its conclusion failed.  For the threshold
statements that would be a bug.  For the subgroup-index inequality
``psi(G) <= psi(H) |G:H|^2``, which is false in general, a ``VIOLATION`` is a
finding: the counterexample being looked for.

Sweeps take catalog entries and return outcomes in (order, index) order
whatever the number of worker processes.
"""

from __future__ import annotations

import enum
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .catalog import CatalogEntry
from .constructors import alternating, cyclic, dihedral, direct_product, paper_group
from .factor import FactoredInteger, prime_divisors, smallest_prime_factor_sieve
from .group import FiniteGroup
from .perm import Permutation, format_cycles
from .psi import (ODD_RATIO, SOLVABLE_RATIO, T_RATIO, Comparison, cyclic_index_bound,
                  herzog_lower_bound, max_element_order_witness, psi, psi_cyclic,
                  psi_via_cyclic_subgroups, threshold_compare)
from .subgroups import (SUBGROUP_ENUMERATION_BOUND, SubgroupHandle, all_subgroups, cyclic_subgroups,
                        handle, is_isomorphic, is_nilpotent, is_solvable, is_supersolvable,
                        maximal_subgroups, normal_subgroups, quotient, subgroup, subgroup_masks)
from .table import CayleyTable, sylow_mask

log = logging.getLogger(__name__)

SCHEMA = "ordersum-report/1"


class Verdict(enum.Enum):
    CONFIRMED = "Confirmed"
    NOT_APPLICABLE = "NotApplicable"
    VIOLATION = "VIOLATION"

    def __str__(self) -> str:
        return self.value


@dataclass
class CheckOutcome:
    check: str
    group_id: str
    order: int
    psi: int
    psi_cn: int
    ratio: Fraction | None
    comparison: Comparison | None
    predicates: dict[str, bool]
    verdict: Verdict
    witness: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        """Plain-data form with a fixed field order; rationals as "p/q" strings."""
        return {
            "check": self.check,
            "group_id": self.group_id,
            "order": self.order,
            "psi": self.psi,
            "psi_cn": self.psi_cn,
            "ratio": None if self.ratio is None else f"{self.ratio.numerator}/{self.ratio.denominator}",
            "comparison": None if self.comparison is None else self.comparison.value,
            "predicates": dict(sorted(self.predicates.items())),
            "verdict": self.verdict.value,
            "witness": self.witness,
        }


def _gid(g: FiniteGroup, group_id: str | None) -> str:
    return group_id or g.name or f"order {g.order}"


def _threshold(g, group_id, check, ratio, predicate, conclusion: Callable[[FiniteGroup], bool]):
    value = psi(g)
    cyc = psi_cyclic(g.order)
    cmp = threshold_compare(value, ratio, cyc)
    preds: dict[str, bool] = {}
    if cmp is Comparison.LESS:
        verdict = Verdict.NOT_APPLICABLE
    else:
        preds["solvable"] = is_solvable(g)
        preds[predicate] = conclusion(g)
        if cmp is Comparison.GREATER:
            verdict = Verdict.CONFIRMED if preds[predicate] else Verdict.VIOLATION
        else:
            verdict = Verdict.NOT_APPLICABLE
    return CheckOutcome(check, _gid(g, group_id), g.order, value, cyc, ratio, cmp, preds, verdict)


def check_T(g: FiniteGroup, group_id: str | None = None) -> CheckOutcome:
    """psi(G) > 31/77 psi(C_n) must force G supersolvable."""
    return _threshold(g, group_id, "t", T_RATIO, "supersolvable", is_supersolvable)


def check_odd(g: FiniteGroup, group_id: str | None = None) -> CheckOutcome:
    """For odd |G|, psi(G) > 271/3647 psi(C_n) must force G supersolvable."""
    if g.order % 2 == 0:
        return CheckOutcome("odd", _gid(g, group_id), g.order, psi(g), psi_cyclic(g.order), ODD_RATIO,
                            None, {}, Verdict.NOT_APPLICABLE, {"reason": "even order"})
    return _threshold(g, group_id, "odd", ODD_RATIO, "supersolvable", is_supersolvable)


def check_solvability_threshold(g: FiniteGroup, group_id: str | None = None) -> CheckOutcome:
    """psi(G) > 211/1617 psi(C_n) must force G solvable."""
    return _threshold(g, group_id, "solvable", SOLVABLE_RATIO, "solvable", is_solvable)


def classify_equality(g: FiniteGroup, group_id: str | None = None) -> CheckOutcome:
    """Groups with psi(G) = 31/77 psi(C_n) that are not supersolvable.

    Such a group must be A4 x C_m with gcd(6, m) = 1.  The witness carries
    ``classification`` ("NotEqualityCase" or "EqualityConfirmed") and ``m``.
    """
    value = psi(g)
    cyc = psi_cyclic(g.order)
    cmp = threshold_compare(value, T_RATIO, cyc)
    out = CheckOutcome("equality", _gid(g, group_id), g.order, value, cyc, T_RATIO, cmp, {},
                       Verdict.NOT_APPLICABLE, {"classification": "NotEqualityCase"})
    if cmp is not Comparison.EQUAL:
        return out
    ss = is_supersolvable(g)
    out.predicates["supersolvable"] = ss
    if ss:
        return out
    m, rem = divmod(g.order, 12)
    if rem or math.gcd(6, m) != 1:
        out.verdict = Verdict.VIOLATION
        out.witness = {"classification": "VIOLATION", "reason": "order is not 12m with gcd(6, m) = 1"}
        return out
    model = direct_product(alternating(4), cyclic(m)) if m > 1 else alternating(4)
    if not is_isomorphic(g, model):
        out.verdict = Verdict.VIOLATION
        out.witness = {"classification": "VIOLATION", "reason": f"not isomorphic to A4xC{m}", "m": m}
        return out
    out.verdict = Verdict.CONFIRMED
    out.witness = {"classification": "EqualityConfirmed", "m": m}
    return out


# -- psi(G) <= psi(H) |G:H|^2 -------------------------------------------------------


def _subgroup_witness(h: SubgroupHandle, psi_h: int, bound: int, value: int) -> dict:
    return {
        "subgroup_order": h.order,
        "index": h.index,
        "psi_subgroup": psi_h,
        "bound": bound,
        "excess": value - bound,
        "generators": [format_cycles(p) for p in h.generators],
    }


def check_HLM(g: FiniteGroup, h: SubgroupHandle, group_id: str | None = None) -> CheckOutcome:
    """Compare psi(G) with psi(H) |G:H|^2.

    ``comparison`` is psi(G) against the bound: GREATER means the inequality
    fails, reported with verdict VIOLATION.
    """
    if h.parent is not g:
        raise ValueError("subgroup belongs to a different group")
    value = psi(g)
    psi_h = int(g.element_orders()[h.mask].sum())
    bound = psi_h * h.index * h.index
    cmp = threshold_compare(value, Fraction(1), bound)
    verdict = Verdict.VIOLATION if cmp is Comparison.GREATER else Verdict.CONFIRMED
    return CheckOutcome("hlm", _gid(g, group_id), g.order, value, psi_cyclic(g.order), None, cmp, {},
                        verdict, _subgroup_witness(h, psi_h, bound, value))


def hlm_counterexample(m: int = 1) -> tuple[FiniteGroup, SubgroupHandle]:
    """The order-32 fixture times C_m, with its maximal subgroup C2xD8 times C_m."""
    base = paper_group("SmallGroup(32,7)")
    model = direct_product(cyclic(2), dihedral(4))
    sub = next(h for h in maximal_subgroups(base) if h.order == 16 and is_isomorphic(h.as_group(), model))
    if m == 1:
        return base, sub
    g = direct_product(base, cyclic(m))
    extra = tuple(range(base.degree, g.degree))
    gens = [Permutation._raw(p.array_form + extra) for p in sub.generators]
    gens.append(g.generators[-1])
    return g, subgroup(g, gens)


def _scan_one(entry: CatalogEntry, bound: int) -> list[CheckOutcome]:
    g = entry.group
    t = g.table
    orders = t.orders
    value = int(orders.sum())
    out = []
    for mask in subgroup_masks(t, is_solvable(g)):
        k = int(mask.sum())
        idx = g.order // k
        if idx == 1:
            continue
        psi_h = int(orders[mask].sum())
        if value > psi_h * idx * idx:
            out.append(check_HLM(g, handle(g, mask), entry.label))
    return out


def scan_HLM(entries: Sequence[CatalogEntry], *, jobs: int = 1,
             bound: int = SUBGROUP_ENUMERATION_BOUND) -> list[CheckOutcome]:
    """Every (G, H) with psi(G) > psi(H) |G:H|^2, in catalog then subgroup order."""
    todo = []
    for e in sorted(entries, key=lambda e: (e.order, e.index)):
        if e.order > bound:
            log.warning("skipping %s: order exceeds subgroup enumeration bound %d", e.group_id, bound)
            continue
        todo.append(e)
    results = _map(_scan_one, todo, jobs, bound)
    return [o for chunk in results for o in chunk]


# -- sweeps -------------------------------------------------------------------------

CHECKS: dict[str, Callable[..., CheckOutcome]] = {
    "t": check_T,
    "odd": check_odd,
    "solvable": check_solvability_threshold,
    "equality": classify_equality,
}


def _run_check(entry: CatalogEntry, name: str) -> CheckOutcome:
    return CHECKS[name](entry.group, entry.label)


def _map(fn, items: list, jobs: int, *args) -> list:
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items, *([a] * len(items) for a in args), chunksize=4))
    return [fn(item, *args) for item in items]


def sweep(name: str, entries: Sequence[CatalogEntry], *, jobs: int = 1) -> list[CheckOutcome]:
    """Run one of ``CHECKS`` over entries; results in (order, index) order."""
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}")
    todo = sorted(entries, key=lambda e: (e.order, e.index))
    return _map(_run_check, todo, jobs, name)


def summarize(outcomes: Iterable[CheckOutcome]) -> dict:
    outcomes = list(outcomes)
    verdicts = {v.value: 0 for v in Verdict}
    comparisons = {c.value: 0 for c in Comparison}
    for o in outcomes:
        verdicts[o.verdict.value] += 1
        if o.comparison is not None:
            comparisons[o.comparison.value] += 1
    return {
        "groups": len(outcomes),
        "verdicts": verdicts,
        "comparisons": comparisons,
        "equal": [o.group_id for o in outcomes if o.comparison is Comparison.EQUAL],
        "violations": [o.group_id for o in outcomes if o.verdict is Verdict.VIOLATION],
    }


def report(name: str, outcomes: Sequence[CheckOutcome]) -> dict:
    return {"schema": SCHEMA, "check": name, "summary": summarize(outcomes),
            "outcomes": [o.to_record() for o in outcomes]}


# -- inequality battery ---------------------------------------------------------------

LEMMA_CHECKS = {
    "normal_cyclic_sylow": "normal cyclic Sylow P: psi(G) <= psi(P) psi(G/P), equality iff P central",
    "normal_quotient": "normal H: psi(G) <= psi(G/H) |H|^2",
    "direct_product": "psi(AxB) <= psi(A) psi(B), equality iff gcd(|A|, |B|) = 1",
    "index_below_2p": "|G:<x>| < 2p: normal cyclic Sylow p, or solvable with <x> maximal of index p or p+1",
    "cyclic_core": "proper cyclic A: |A:core(A)| < |G:A|, and |A| > |G:A| forces core(A) > 1",
    "cyclic_index_witness": "psi(G) > (r/s) psi(C_n): some |G:<x>| < (s/r) prod (p+1)/p",
    "cyclic_lower_bound": "largest prime p >= 11: psi(C_n) >= 385/96 n^2/(p+1)",
    "odd_cyclic_lower_bound": "odd n, largest prime p >= 37: psi(C_n) >= h'(12) n^2/(p+1)",
    "cyclic_maximality": "psi(G) <= psi(C_n), equality iff G cyclic",
    "predicate_chain": "nilpotent => supersolvable => solvable",
    "lagrange": "every subgroup order divides |G|",
    "normal_sylow_quotient": "normal Sylow P: |G/P| = |G|/|P|",
    "psi_paths": "psi by element scan equals the phi-weighted sum over cyclic subgroups",
}


@dataclass
class LemmaReport:
    checks: dict[str, int] = field(default_factory=lambda: {k: 0 for k in LEMMA_CHECKS})
    failures: dict[str, list[dict]] = field(default_factory=lambda: {k: [] for k in LEMMA_CHECKS})

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def merge(self, other: LemmaReport) -> None:
        for k in LEMMA_CHECKS:
            self.checks[k] += other.checks[k]
            self.failures[k].extend(other.failures[k])

    def record(self, name: str, ok: bool, witness: dict) -> None:
        self.checks[name] += 1
        if not ok:
            self.failures[name].append(witness)

    def to_record(self) -> dict:
        return {
            "schema": SCHEMA,
            "check": "lemmas",
            "ok": self.ok,
            "checks": dict(self.checks),
            "failures": {k: v for k, v in self.failures.items() if v},
        }


def _is_cyclic_mask(t: CayleyTable, mask: np.ndarray) -> bool:
    return int(t.orders[mask].max()) == int(mask.sum())


def _is_maximal(t: CayleyTable, mask: np.ndarray) -> bool:
    if mask.all():
        return False
    return all(t.closure([int(y)], mask).all() for y in np.flatnonzero(~mask))


def _group_lemmas(entry: CatalogEntry, bound: int) -> LemmaReport:
    rep = LemmaReport()
    g = entry.group
    gid = entry.group_id
    t = g.table
    n = g.order
    orders = t.orders
    value = int(orders.sum())
    cyc = psi_cyclic(n)
    primes = prime_divisors(n) if n > 1 else []

    rep.record("cyclic_maximality", value <= cyc and (value == cyc) == (int(orders.max()) == n),
               {"group": gid, "psi": value, "psi_cn": cyc})

    alt = psi_via_cyclic_subgroups(g)
    rep.record("psi_paths", alt == value, {"group": gid, "psi": value, "cyclic_sum": alt})

    sylows = {p: sylow_mask(t, p) for p in primes}
    for p, pm in sylows.items():
        if not t.is_normal(pm):
            continue
        size = int(pm.sum())
        q = quotient(g, handle(g, pm))
        rep.record("normal_sylow_quotient", q.order == n // size,
                   {"group": gid, "p": p, "quotient_order": q.order})
        if not _is_cyclic_mask(t, pm):
            continue
        psi_q = int(t.quotient(pm)[0].orders.sum())
        rhs = psi_cyclic(size) * psi_q
        central = bool(t.center[pm].all())
        rep.record("normal_cyclic_sylow", value <= rhs and (value == rhs) == central,
                   {"group": gid, "p": p, "psi": value, "bound": rhs, "central": central})

    for h in normal_subgroups(g):
        psi_q = int(t.quotient(h.mask)[0].orders.sum())
        rhs = psi_q * h.order * h.order
        rep.record("normal_quotient", value <= rhs,
                   {"group": gid, "normal_order": h.order, "psi": value, "bound": rhs})

    solvable = is_solvable(g)
    if primes:
        p = primes[-1]
        pm = sylows[p]
        first = bool(t.is_normal(pm)) and _is_cyclic_mask(t, pm)
        for a in cyclic_subgroups(g):
            if a.index >= 2 * p:
                continue
            ok = first or (solvable and a.index in (p, p + 1) and _is_maximal(t, a.mask))
            rep.record("index_below_2p", ok, {"group": gid, "p": p, "index": a.index})

    if n <= bound:
        for a in cyclic_subgroups(g):
            if a.index == 1:
                continue
            k = int(t.core(a.mask).sum())
            ok = a.order // k < a.index and (a.order <= a.index or k > 1)
            rep.record("cyclic_core", ok, {"group": gid, "cyclic_order": a.order, "core_order": k})

    for ratio in (T_RATIO, ODD_RATIO):
        if threshold_compare(value, ratio, cyc) is Comparison.GREATER:
            _, idx = max_element_order_witness(g)
            limit = cyclic_index_bound(ratio, n)
            rep.record("cyclic_index_witness", idx < limit,
                       {"group": gid, "ratio": str(ratio), "index": idx, "limit": str(limit)})

    if n <= bound:
        for h in all_subgroups(g, bound):
            rep.record("lagrange", n % h.order == 0, {"group": gid, "subgroup_order": h.order})
        nil = is_nilpotent(g)
        ss = is_supersolvable(g)
        rep.record("predicate_chain", (not nil or ss) and (not ss or solvable),
                   {"group": gid, "nilpotent": nil, "supersolvable": ss, "solvable": solvable})
    return rep


def _order_profile(entry: CatalogEntry) -> tuple[np.ndarray, np.ndarray]:
    vals, counts = np.unique(entry.group.element_orders(), return_counts=True)
    return vals.astype(np.int64), counts.astype(np.int64)


def direct_product_lemma(entries: Sequence[CatalogEntry], *, limit: int = 2000,
                         sample_every: int = 97, sample_limit: int = 400) -> LemmaReport:
    """psi(AxB) against psi(A) psi(B) for all pairs with |A||B| <= limit.

    psi(AxB) is computed from the order statistics of the factors, since
    o((a, b)) = lcm(o(a), o(b)).  Every ``sample_every``-th pair with
    |A||B| <= ``sample_limit`` is also built as a permutation group and its
    psi scanned directly.
    """
    rep = LemmaReport()
    todo = sorted(entries, key=lambda e: (e.order, e.index))
    profiles = [_order_profile(e) for e in todo]
    psis = [int((v * c).sum()) for v, c in profiles]
    count = 0
    for i, a in enumerate(todo):
        va, ca = profiles[i]
        for j in range(i, len(todo)):
            b = todo[j]
            if a.order * b.order > limit:
                continue
            vb, cb = profiles[j]
            value = int((np.outer(ca, cb) * np.lcm.outer(va, vb)).sum())
            rhs = psis[i] * psis[j]
            coprime = math.gcd(a.order, b.order) == 1
            witness = {"a": a.group_id, "b": b.group_id, "psi": value, "bound": rhs}
            rep.record("direct_product", value <= rhs and (value == rhs) == coprime, witness)
            if a.order * b.order <= sample_limit and count % sample_every == 0:
                scanned = psi(direct_product(a.group, b.group))
                rep.record("direct_product", scanned == value, dict(witness, scanned=scanned))
            count += 1
    return rep


def cyclic_bound_lemmas(limit: int = 10**5) -> LemmaReport:
    """Both lower bounds for psi(C_n), for every applicable n <= limit."""
    rep = LemmaReport()
    spf = smallest_prime_factor_sieve(limit)
    for n in range(2, limit + 1):
        factors = []
        m = n
        while m > 1:
            p = spf[m]
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            factors.append((p, a))
        f = FactoredInteger(tuple(factors))
        p = factors[-1][0]
        if p < 11:
            continue
        value = psi_cyclic(f)
        rep.record("cyclic_lower_bound", value >= herzog_lower_bound(f), {"n": n, "psi": value})
        if n % 2 and p >= 37:
            rep.record("odd_cyclic_lower_bound", value >= herzog_lower_bound(f, odd=True),
                       {"n": n, "psi": value})
    return rep


def verify_lemmas(entries: Sequence[CatalogEntry], *, jobs: int = 1, pair_limit: int = 2000,
                  cyclic_limit: int = 10**5, bound: int = SUBGROUP_ENUMERATION_BOUND) -> LemmaReport:
    """The whole inequality battery over the given entries (plus the numeric sweep)."""
    todo = sorted(entries, key=lambda e: (e.order, e.index))
    rep = LemmaReport()
    for part in _map(_group_lemmas, todo, jobs, bound):
        rep.merge(part)
    rep.merge(direct_product_lemma(todo, limit=pair_limit))
    if cyclic_limit:
        rep.merge(cyclic_bound_lemmas(cyclic_limit))
    return rep


__all__ = [
    "CHECKS", "CheckOutcome", "LEMMA_CHECKS", "LemmaReport", "SCHEMA", "Verdict",
    "check_HLM", "check_T", "check_odd", "check_solvability_threshold", "classify_equality",
    "cyclic_bound_lemmas", "direct_product_lemma", "hlm_counterexample", "report", "scan_HLM",
    "summarize", "sweep", "verify_lemmas",
]
