"""End-to-end acceptance checks.

Each test reports one ``criterion N: PASS|FAIL`` line (shown in the terminal
summary) and then asserts, so a failing criterion fails the run.
"""

import time
from fractions import Fraction

import numpy as np

from ordersum.catalog import load_counts, select, validate_catalog
from ordersum.conjectures import (Verdict, check_HLM, hlm_counterexample, scan_HLM, summarize, sweep,
                                  verify_lemmas)
from ordersum.constructors import alternating, cyclic, direct_product, paper_group
from ordersum.psi import ODD_RATIO, Comparison, psi, psi_cyclic, psi_via_cyclic_subgroups, threshold_compare
from ordersum.subgroups import is_isomorphic

EXPECTED_PSI = [
    ("A4", 31), ("C12", 77), ("S4", 67), ("SL(2,3)", 99), ("C2xA4", 87),
    ("(C2xC2):C9", 265), ("(C3xC3):C4", 115), ("C3xA4", 121), ("(C5xC5):C3", 271),
    ("C75", 3647), ("(C5xC5):C9", 2197), ("C3x((C5xC5):C3)", 1297),
    ("((C5xC5):C5):C3", 3771), ("C5x((C5xC5):C3)", 3771), ("SmallGroup(32,7)", 167),
    ("C2xD8", 39),
]


def _build(name):
    if name == "A4":
        return alternating(4)
    if name in ("C12", "C75"):
        return cyclic(int(name[1:]))
    return paper_group(name)


def test_criterion_1_psi_fixtures(acceptance_log):
    wrong, slow = [], []
    for name, expected in EXPECTED_PSI:
        start = time.perf_counter()
        value = psi(_build(name))
        elapsed = time.perf_counter() - start
        if value != expected:
            wrong.append((name, value, expected))
        if elapsed >= 1.0:
            slow.append((name, round(elapsed, 2)))
    ok = not wrong and not slow
    acceptance_log(1, ok, f"{len(EXPECTED_PSI)} fixtures, wrong={wrong}, slow={slow}")
    assert ok


def test_criterion_2_order_32_counterexample(catalog, acceptance_log):
    start = time.perf_counter()
    g, h = hlm_counterexample()
    base = check_HLM(g, h)
    problems = []
    if not (base.verdict is Verdict.VIOLATION and base.psi == 167 and base.witness["psi_subgroup"] == 39
            and base.witness["index"] == 2 and base.witness["bound"] == 156):
        problems.append(("base", base.psi, base.witness))
    for m in (3, 5, 7, 9):
        g, h = hlm_counterexample(m)
        out = check_HLM(g, h)
        cm = psi_cyclic(m)
        if not (out.verdict is Verdict.VIOLATION and out.psi == 167 * cm and out.witness["bound"] == 156 * cm):
            problems.append((m, out.psi, out.witness["bound"]))
    found = scan_HLM(select(catalog, range(1, 32)))
    elapsed = time.perf_counter() - start
    ok = not problems and not found and elapsed < 600
    acceptance_log(2, ok, f"167 > 156 and x C_m family for m=3,5,7,9; scan 1..31 found {len(found)}; "
                          f"{elapsed:.1f}s problems={problems}")
    assert ok


def test_criterion_3_supersolvability_threshold_sweep(catalog, acceptance_log):
    start = time.perf_counter()
    entries = select(catalog, range(1, 101))
    outcomes = sweep("t", entries)
    summary = summarize(outcomes)
    equal = [(o.order, o) for o in outcomes if o.comparison is Comparison.EQUAL]
    equal_orders = sorted(n for n, _ in equal)
    models_ok = all(is_isomorphic(next(e for e in entries if e.label == o.group_id).group,
                                  direct_product(alternating(4), cyclic(n // 12)) if n > 12 else alternating(4))
                    for n, o in equal)
    elapsed = time.perf_counter() - start
    ok = (len(entries) == 1048 and not summary["violations"] and equal_orders == [12, 60, 84]
          and models_ok and elapsed < 900)
    acceptance_log(3, ok, f"{len(entries)} groups, violations={summary['violations']}, "
                          f"equal={summary['equal']}, A4 x C_m models={models_ok}, {elapsed:.1f}s")
    assert ok


def test_criterion_4_odd_and_solvability_sweeps(catalog, acceptance_log):
    odd = [e for e in select(catalog, range(1, 100)) if e.order % 2]
    odd_out = sweep("odd", odd)
    odd_summary = summarize(odd_out)
    a75 = paper_group("(C5xC5):C3")
    lands_equal = (psi(a75) == 271 and threshold_compare(271, ODD_RATIO, psi_cyclic(75)) is Comparison.EQUAL
                   and ODD_RATIO * 3647 == Fraction(271))
    equal_ids = [o for o in odd_out if o.comparison is Comparison.EQUAL]
    equal_is_a75 = len(equal_ids) == 1 and equal_ids[0].order == 75 and "(C5xC5):C3" in equal_ids[0].group_id
    sol_summary = summarize(sweep("solvable", select(catalog, range(1, 101))))
    ok = (not odd_summary["violations"] and lands_equal and equal_is_a75 and not sol_summary["violations"])
    acceptance_log(4, ok, f"{len(odd)} odd groups, violations={odd_summary['violations']}, "
                          f"equal={odd_summary['equal']}; solvability violations={sol_summary['violations']}")
    assert ok


def test_criterion_5_inequality_battery(catalog, acceptance_log):
    rep = verify_lemmas(select(catalog, range(1, 101)), cyclic_limit=10**5)
    failed = {k: len(v) for k, v in rep.failures.items() if v}
    ran_all = all(n > 0 for n in rep.checks.values())
    ok = rep.ok and ran_all
    acceptance_log(5, ok, f"{sum(rep.checks.values())} checks over {len(rep.checks)} families, failures={failed}")
    assert ok


def test_criterion_6_oracle_equivalences(catalog, acceptance_log):
    # element scan over the residues mod n: the order of k is n / gcd(k, n)
    closed_bad = []
    for n in range(1, 2001):
        k = np.arange(n, dtype=np.int64)
        scan = int((n // np.gcd(k, n)).sum())
        if scan != psi_cyclic(n):
            closed_bad.append(n)
    # the permutation group itself for the smaller n
    group_bad = [n for n in range(1, 301) if psi(cyclic(n)) != psi_cyclic(n)]
    chain_bad = [e.group_id for e in catalog if e.group.order != e.group.closure_order()]
    path_bad = [e.group_id for e in catalog if e.order <= 512 and psi_via_cyclic_subgroups(e.group) != psi(e.group)]
    ok = not (closed_bad or group_bad or chain_bad or path_bad)
    acceptance_log(6, ok, f"closed form n<=2000 bad={closed_bad[:5]}, group scan n<=300 bad={group_bad[:5]}, "
                          f"chain vs closure bad={chain_bad[:5]}, cyclic-subgroup path bad={path_bad[:5]}")
    assert ok


def test_criterion_7_catalog_integrity(catalog, acceptance_log):
    counts = load_counts()
    per = {}
    for e in catalog:
        per[e.order] = per.get(e.order, 0) + 1
    count_bad = [n for n in range(1, 101) if per.get(n, 0) != counts[n]]
    rep = validate_catalog(catalog, counts, orders=range(1, 101), pairwise_max=63)
    ok = not count_bad and rep.ok and rep.checked == 1048
    acceptance_log(7, ok, f"{rep.checked} groups, count mismatches={count_bad}, "
                          f"same-fingerprint pairs screened={rep.pairs_screened}, errors={rep.errors[:3]}")
    assert ok
