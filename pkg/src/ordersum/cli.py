"""Command-line interface: ``ordersum psi|check|lemmas|catalog``.

Group specs are a small language::

    A4 | A 4 | S4 | C12 | C 12 | D4 | D 4     named families (D n has order 2n)
    catalog 32 7                              catalog entry by (order, index)
    product A4 C5 [...]                       direct product of the following specs
    SL(2,3) | (C5xC5):C3 | SmallGroup(32,7)   named fixture groups

Exit codes: 0 success, 1 violation found, 2 usage error, 3 data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from fractions import Fraction

from . import __version__
from .catalog import CatalogError, find_entry, load_catalog, load_counts, select, validate_catalog
from .conjectures import (CHECKS, LEMMA_CHECKS, SCHEMA, Verdict, check_HLM, report, scan_HLM,
                          summarize, sweep, verify_lemmas)
from .constructors import alternating, cyclic, dihedral, direct_product, paper_group, symmetric
from .group import FiniteGroup
from .psi import order_histogram, psi, psi_cyclic
from .subgroups import handle, is_solvable, subgroup_masks

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3

_FAMILIES = {"C": cyclic, "D": dihedral, "S": symmetric, "A": alternating}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


# -- specs and ranges ---------------------------------------------------------------


def parse_orders(text: str) -> list[int]:
    """``"1..100"``, ``"32"`` or a comma list of either."""
    out: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"(\d+)\s*\.\.\s*(\d+)", part)
        if m:
            a, b = int(m.group(1)), int(m.group(2))
            if a < 1 or b < a:
                raise UsageError(f"bad order range {part!r}")
            out.update(range(a, b + 1))
        elif part.isdigit() and int(part) >= 1:
            out.add(int(part))
        else:
            raise UsageError(f"bad order range {part!r}")
    return sorted(out)


class _Catalog:
    """Loads the catalog on first use."""

    def __init__(self, path):
        self.path = path
        self._entries = None

    @property
    def entries(self):
        if self._entries is None:
            try:
                self._entries = load_catalog(self.path)
            except (OSError, CatalogError) as exc:
                raise DataError(str(exc)) from None
        return self._entries


def _parse_one(tokens: list[str], pos: int, catalog: _Catalog) -> tuple[FiniteGroup, str, int]:
    if pos >= len(tokens):
        raise UsageError("group spec is incomplete")
    tok = tokens[pos]
    m = re.fullmatch(r"([CDSA])(\d+)", tok)
    if m:
        return _family(m.group(1), int(m.group(2))), tok, pos + 1
    if tok in _FAMILIES:
        if pos + 1 >= len(tokens) or not tokens[pos + 1].isdigit():
            raise UsageError(f"{tok} needs a number")
        n = int(tokens[pos + 1])
        return _family(tok, n), f"{tok}{n}", pos + 2
    if tok == "catalog":
        try:
            order, index = int(tokens[pos + 1]), int(tokens[pos + 2])
        except (IndexError, ValueError):
            raise UsageError("catalog needs ORDER INDEX") from None
        try:
            entry = find_entry(catalog.entries, order, index)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        return entry.group, entry.label, pos + 3
    if tok == "product":
        factors = []
        names = []
        pos += 1
        while pos < len(tokens):
            g, name, pos = _parse_one(tokens, pos, catalog)
            factors.append(g)
            names.append(name)
        if len(factors) < 2:
            raise UsageError("product needs at least two factors")
        return direct_product(*factors), "x".join(names), pos
    try:
        g = paper_group(tok)
    except KeyError:
        raise UsageError(f"unknown group spec {tok!r}") from None
    return g, g.name, pos + 1


def _family(letter: str, n: int) -> FiniteGroup:
    try:
        return _FAMILIES[letter](n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_group_spec(tokens: list[str], catalog: _Catalog | None = None) -> tuple[FiniteGroup, str]:
    catalog = catalog or _Catalog(None)
    if len(tokens) == 1 and " " in tokens[0]:
        tokens = tokens[0].split()
    g, name, pos = _parse_one(tokens, 0, catalog)
    if pos != len(tokens):
        raise UsageError(f"unexpected trailing tokens {tokens[pos:]}")
    return g, name


# -- output --------------------------------------------------------------------------


def _decimal(a: int, b: int) -> str:
    # display only; comparisons never see this value
    return f"{float(Fraction(a, b)):.6g}"


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _emit_tsv(records: list[dict]) -> None:
    cols = ["check", "group_id", "order", "psi", "psi_cn", "ratio", "comparison", "verdict",
            "predicates", "witness"]
    print("\t".join(cols))
    for r in records:
        row = []
        for c in cols:
            v = r[c]
            if c == "predicates":
                v = ",".join(f"{k}={str(x).lower()}" for k, x in v.items())
            elif c == "witness":
                v = json.dumps(v, separators=(",", ":"))
            row.append("" if v is None else str(v))
        print("\t".join(row))


def _print_outcomes(name: str, outcomes, args) -> None:
    if args.json:
        _emit_json(report(name, outcomes))
        return
    if args.tsv:
        _emit_tsv([o.to_record() for o in outcomes])
        return
    s = summarize(outcomes)
    if name == "hlm":
        print(f"{len(outcomes)} pair(s) with psi(G) > psi(H)|G:H|^2")
        for o in outcomes:
            w = o.witness
            print(f"  {o.group_id}: psi(G) = {o.psi} > {w['psi_subgroup']}*{w['index']}^2 = {w['bound']}"
                  f"  (|H| = {w['subgroup_order']}, H = <{', '.join(w['generators'])}>)")
        return
    print(f"{name}: {s['groups']} group(s); " + ", ".join(f"{k} {v}" for k, v in s["comparisons"].items())
          + "; " + ", ".join(f"{k} {v}" for k, v in s["verdicts"].items()))
    for o in outcomes:
        if o.comparison is not None and (len(outcomes) <= 20 or o.verdict is Verdict.VIOLATION
                                         or o.comparison.value == "Equal"):
            extra = " ".join(f"{k}={v}" for k, v in o.predicates.items())
            wit = f" {o.witness}" if o.witness and name == "equality" else ""
            print(f"  {o.group_id:<24} psi {o.psi:>6}  psi(C_n) {o.psi_cn:>8}  "
                  f"ratio {_decimal(o.psi, o.psi_cn):>8}  {o.comparison.value:<7} {o.verdict.value} {extra}{wit}")


# -- commands --------------------------------------------------------------------------


def cmd_psi(args, catalog) -> int:
    g, name = parse_group_spec(args.spec, catalog)
    value = psi(g)
    hist = order_histogram(g)
    cyc = psi_cyclic(g.order)
    if args.json:
        _emit_json({"schema": SCHEMA, "check": "psi", "group": name, "order": g.order, "psi": value,
                    "psi_cn": cyc, "order_histogram": {str(k): v for k, v in hist.items()}})
    else:
        print(f"psi({name}) = {value}")
        print(f"order {g.order}, psi(C_{g.order}) = {cyc}, ratio {_decimal(value, cyc)}")
        print("element orders: " + " ".join(f"{k}:{v}" for k, v in hist.items()))
    return EXIT_OK


def _entries_for(args, catalog):
    entries = catalog.entries
    if args.orders:
        return select(entries, parse_orders(args.orders))
    return select(entries)


def cmd_check(args, catalog) -> int:
    if args.spec:
        g, name = parse_group_spec(args.spec, catalog)
        if args.kind == "hlm":
            outcomes = []
            t = g.table
            total = int(t.orders.sum())
            for mask in subgroup_masks(t, is_solvable(g)):
                k = int(mask.sum())
                if k < g.order and total > int(t.orders[mask].sum()) * (g.order // k) ** 2:
                    outcomes.append(check_HLM(g, handle(g, mask), name))
        else:
            outcomes = [CHECKS[args.kind](g, name)]
    else:
        entries = _entries_for(args, catalog)
        if args.kind == "odd":
            entries = [e for e in entries if e.order % 2]
        if args.kind == "hlm":
            outcomes = scan_HLM(entries, jobs=args.jobs)
        else:
            outcomes = sweep(args.kind, entries, jobs=args.jobs)
    _print_outcomes(args.kind, outcomes, args)
    if args.kind != "hlm" and any(o.verdict is Verdict.VIOLATION for o in outcomes):
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_lemmas(args, catalog) -> int:
    entries = _entries_for(args, catalog)
    rep = verify_lemmas(entries, jobs=args.jobs, pair_limit=args.pair_limit, cyclic_limit=args.cyclic_limit)
    if args.json:
        _emit_json(rep.to_record())
    else:
        print(f"{len(entries)} group(s)")
        for k, desc in LEMMA_CHECKS.items():
            fails = rep.failures[k]
            print(f"  {k:<24} {rep.checks[k]:>8} checks  {len(fails):>3} failures   {desc}")
            for w in fails[:10]:
                print(f"      {w}")
        print("all passed" if rep.ok else "FAILURES found")
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_catalog(args, catalog) -> int:
    entries = catalog.entries
    counts = load_counts()
    orders = parse_orders(args.orders) if args.orders else None
    chosen = select(entries, orders)
    if args.action == "stats":
        per = {}
        for e in chosen:
            per[e.order] = per.get(e.order, 0) + 1
        span = orders or sorted(counts)
        mismatched = [n for n in span if per.get(n, 0) != counts.get(n, 0)]
        if args.json:
            _emit_json({"schema": SCHEMA, "check": "catalog-stats", "groups": len(chosen),
                        "orders": {str(k): v for k, v in sorted(per.items())},
                        "count_mismatches": mismatched})
        else:
            lo, hi = (min(per), max(per)) if per else (0, 0)
            print(f"{len(chosen)} groups over orders {lo}..{hi}")
            print("counts match the counts table" if not mismatched
                  else f"count mismatch at orders {mismatched}")
        return EXIT_OK if not mismatched else EXIT_DATA
    rep = validate_catalog(chosen, counts, orders=orders, jobs=args.jobs)
    if args.json:
        _emit_json({"schema": SCHEMA, "check": "catalog-validate", "ok": rep.ok, "checked": rep.checked,
                    "counts": {str(k): v for k, v in rep.counts.items()},
                    "pairs_screened": rep.pairs_screened, "errors": rep.errors})
    else:
        print(f"{rep.checked} groups checked, {rep.pairs_screened} same-fingerprint pairs screened")
        if len(rep.counts) <= 10:
            for n, k in rep.counts.items():
                values = [e.expected_psi for e in chosen if e.order == n]
                print(f"  order {n}: {k} groups, psi {values}")
        for err in rep.errors:
            print(f"  error: {err}")
        print("catalog OK" if rep.ok else "catalog INVALID")
    return EXIT_OK if rep.ok else EXIT_DATA


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", metavar="PATH", help="catalog file (default: $ORDERSUM_CATALOG or bundled)")
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes for sweeps")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="ordersum", description="Sums of element orders of finite groups.")
    ap.add_argument("--version", action="version", version=f"ordersum {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("psi", parents=[common], help="psi of one group")
    p.add_argument("spec", nargs="+", help="group spec, e.g. A4, C 12, product C2 D4")

    p = sub.add_parser("check", parents=[common], help="threshold checks and the subgroup-index scan")
    p.add_argument("kind", choices=sorted(list(CHECKS) + ["hlm"]))
    p.add_argument("spec", nargs="*", help="group spec (default: catalog range)")
    p.add_argument("--orders", metavar="A..B")
    p.add_argument("--tsv", action="store_true", help="tab-separated rows")

    p = sub.add_parser("lemmas", parents=[common], help="inequality battery over a catalog range")
    p.add_argument("--orders", metavar="A..B")
    p.add_argument("--pair-limit", type=int, default=2000, help="max |A||B| for direct-product pairs")
    p.add_argument("--cyclic-limit", type=int, default=10**5, help="n range for the cyclic bounds (0 skips)")

    p = sub.add_parser("catalog", parents=[common], help="catalog validation and statistics")
    p.add_argument("action", choices=["validate", "stats"])
    p.add_argument("--orders", metavar="A..B")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if getattr(args, "jobs", 1) < 1:
        print("ordersum: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "json", False) and getattr(args, "tsv", False):
        print("ordersum: --json and --tsv are exclusive", file=sys.stderr)
        return EXIT_USAGE
    catalog = _Catalog(args.catalog)
    handlers = {"psi": cmd_psi, "check": cmd_check, "lemmas": cmd_lemmas, "catalog": cmd_catalog}
    try:
        return handlers[args.command](args, catalog)
    except UsageError as exc:
        print(f"ordersum: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"ordersum: data error:\n{exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
