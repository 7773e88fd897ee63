import json

from ordersum.catalog import CatalogEntry, parse_catalog, select
from ordersum.conjectures import (LEMMA_CHECKS, Verdict, check_HLM, check_odd, check_solvability_threshold,
                                  check_T, classify_equality, cyclic_bound_lemmas, direct_product_lemma,
                                  hlm_counterexample, report, scan_HLM, summarize, sweep, verify_lemmas)
from ordersum.constructors import alternating, cyclic, direct_product, paper_group, symmetric
from ordersum.psi import Comparison
from ordersum.subgroups import subgroup, whole


def test_threshold_verdicts():
    a4 = check_T(alternating(4))
    assert a4.comparison is Comparison.EQUAL and a4.verdict is Verdict.NOT_APPLICABLE
    c12 = check_T(cyclic(12))
    assert c12.verdict is Verdict.CONFIRMED and c12.predicates["supersolvable"]
    s4 = check_T(symmetric(4))
    assert s4.comparison is Comparison.LESS and s4.predicates == {}
    assert check_odd(cyclic(4)).witness == {"reason": "even order"}
    assert check_odd(paper_group("(C5xC5):C3")).comparison is Comparison.EQUAL
    a5 = check_solvability_threshold(alternating(5))
    assert a5.comparison is Comparison.EQUAL and a5.verdict is Verdict.NOT_APPLICABLE


def test_equality_classification():
    out = classify_equality(direct_product(alternating(4), cyclic(5)))
    assert out.verdict is Verdict.CONFIRMED
    assert out.witness == {"classification": "EqualityConfirmed", "m": 5}
    assert classify_equality(symmetric(3)).witness["classification"] == "NotEqualityCase"


def test_record_is_plain_and_ordered():
    rec = check_T(cyclic(12), "12/2").to_record()
    assert list(rec) == ["check", "group_id", "order", "psi", "psi_cn", "ratio", "comparison", "predicates",
                         "verdict", "witness"]
    assert rec["ratio"] == "31/77"
    json.dumps(rec)


def test_hlm_counterexample_and_bound():
    g, h = hlm_counterexample()
    out = check_HLM(g, h)
    assert out.verdict is Verdict.VIOLATION
    assert (out.psi, out.witness["bound"], out.witness["excess"]) == (167, 156, 11)
    g3, h3 = hlm_counterexample(3)
    out3 = check_HLM(g3, h3)
    assert out3.psi == 167 * 7 and out3.witness["bound"] == 156 * 7


def test_hlm_holds_for_small_examples():
    s4 = symmetric(4)
    assert check_HLM(s4, whole(s4)).verdict is Verdict.CONFIRMED
    h = subgroup(s4, [s4.generators[0]])
    assert check_HLM(s4, h).verdict is Verdict.CONFIRMED


def test_scan_finds_the_order_32_group():
    g, _ = hlm_counterexample()
    entry = CatalogEntry(32, 1, "fixture", g.degree, g.generators)
    found = scan_HLM([entry])
    assert found and all(o.verdict is Verdict.VIOLATION for o in found)
    assert any(o.witness["subgroup_order"] == 16 and o.witness["psi_subgroup"] == 39 for o in found)


def test_sweep_summary_and_report(catalog):
    entries = select(catalog, range(1, 25))
    outs = sweep("t", entries)
    s = summarize(outs)
    assert s["groups"] == len(entries)
    assert s["violations"] == [] and s["equal"] == ["12/5 A4"]
    rep = report("t", outs)
    json.dumps(rep)
    assert sweep("t", entries, jobs=2)[5].to_record() == outs[5].to_record()


def test_lemma_battery_small(catalog):
    rep = verify_lemmas(select(catalog, range(1, 31)), pair_limit=200, cyclic_limit=2000)
    assert rep.ok, {k: v[:2] for k, v in rep.failures.items() if v}
    assert set(rep.checks) == set(LEMMA_CHECKS)


def test_direct_product_lemma_and_cyclic_bounds(catalog):
    rep = direct_product_lemma(select(catalog, range(1, 13)), limit=144)
    assert rep.ok and rep.checks["direct_product"] > 0
    cyc = cyclic_bound_lemmas(5000)
    assert cyc.ok and cyc.checks["cyclic_lower_bound"] > 0 and cyc.checks["odd_cyclic_lower_bound"] > 0


def test_lemma_record_for_single_group():
    entries = parse_catalog("8:1:D8:4:(1 2 3 4);(1 3):\n")
    rep = verify_lemmas(entries, pair_limit=64, cyclic_limit=0)
    assert rep.ok
    rec = rep.to_record()
    assert rec["ok"] is True and rec["failures"] == {}
