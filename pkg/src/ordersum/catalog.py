"""The bundled catalog of small groups and its text format.

One group per line, UTF-8, ``#`` starts a comment line, blank lines are
ignored::

    line       := order ":" index ":" name ":" degree ":" generators ":" psi
    order      := INT                      (>= 1)
    index      := INT                      (>= 1, unique within the order)
    name       := any text without newline (may be empty, may contain ":")
    degree     := INT                      (>= 1)
    generators := perm { ";" perm }        (cycle notation, points <= degree)
    psi        := INT | ""                 (expected sum of element orders)

The order and index are split off from the left and the last three fields
from the right, so a name such as ``(C5xC5):C3`` needs no escaping.  The
catalog path can be overridden with the ``ORDERSUM_CATALOG`` environment
variable.
"""

from __future__ import annotations

import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .group import FiniteGroup
from .isomorphism import fingerprint, tables_isomorphic
from .perm import Permutation, format_cycles, parse_cycles
from .psi import psi, psi_cyclic

CATALOG_ENV = "ORDERSUM_CATALOG"
# pairwise isomorphism screening is quadratic; orders above this are exempt
PAIRWISE_SCREEN_MAX = 63


class CatalogError(ValueError):
    """Problems found while reading a catalog file, each with its line number."""

    def __init__(self, problems: Sequence[tuple[int, str]], source: str = "<catalog>"):
        self.problems = list(problems)
        self.source = source
        super().__init__("\n".join(f"{source}:{ln}: {msg}" for ln, msg in self.problems))


@dataclass(frozen=True)
class CatalogEntry:
    order: int
    index: int
    name: str
    degree: int
    generators: tuple[Permutation, ...]
    expected_psi: int | None = None
    line: int = field(default=0, compare=False)

    @property
    def group_id(self) -> str:
        return f"{self.order}/{self.index}"

    @property
    def label(self) -> str:
        return f"{self.group_id} {self.name}" if self.name else self.group_id

    @cached_property
    def group(self) -> FiniteGroup:
        return FiniteGroup(self.generators, name=self.name or self.group_id)

    def __getstate__(self):
        # the cached group holds a lock; workers rebuild it
        state = dict(self.__dict__)
        state.pop("group", None)
        return state


def format_entry(entry: CatalogEntry) -> str:
    gens = ";".join(format_cycles(p) for p in entry.generators)
    psi_text = "" if entry.expected_psi is None else str(entry.expected_psi)
    return f"{entry.order}:{entry.index}:{entry.name}:{entry.degree}:{gens}:{psi_text}"


def _positive(text: str, what: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ValueError(f"{what} is not an integer: {text!r}") from None
    if value < 1:
        raise ValueError(f"{what} must be positive, got {value}")
    return value


def parse_entry(line: str, lineno: int = 0) -> CatalogEntry:
    """Parse one catalog line; raises ``ValueError`` with a readable message."""
    head = line.split(":", 2)
    if len(head) < 3:
        raise ValueError("expected 6 ':'-separated fields")
    tail = head[2].rsplit(":", 3)
    if len(tail) < 4:
        raise ValueError("expected 6 ':'-separated fields")
    order = _positive(head[0].strip(), "order")
    index = _positive(head[1].strip(), "index")
    name, deg_text, gen_text, psi_text = (s.strip() for s in tail)
    degree = _positive(deg_text, "degree")
    if not gen_text:
        raise ValueError("no generators")
    gens = []
    for part in gen_text.split(";"):
        try:
            gens.append(parse_cycles(part.strip(), degree))
        except ValueError as exc:
            raise ValueError(f"generator {part.strip()!r}: {exc}") from None
    expected = int(psi_text) if psi_text else None
    if expected is not None and expected < 1:
        raise ValueError(f"psi must be positive, got {expected}")
    return CatalogEntry(order, index, name, degree, tuple(gens), expected, lineno)


def parse_catalog(text: str, source: str = "<catalog>") -> list[CatalogEntry]:
    entries: list[CatalogEntry] = []
    problems: list[tuple[int, str]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            entry = parse_entry(line, lineno)
        except ValueError as exc:
            problems.append((lineno, str(exc)))
            continue
        key = (entry.order, entry.index)
        if key in seen:
            problems.append((lineno, f"duplicate id {entry.group_id} (first on line {seen[key]})"))
            continue
        seen[key] = lineno
        entries.append(entry)
    if problems:
        raise CatalogError(problems, source)
    return entries


def default_catalog_path() -> Path:
    env = os.environ.get(CATALOG_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("ordersum") / "data" / "catalog.txt"))


def load_catalog(path: str | os.PathLike | None = None) -> list[CatalogEntry]:
    """Entries of a catalog file (the bundled one by default), in file order."""
    path = Path(path) if path is not None else default_catalog_path()
    return parse_catalog(path.read_text(encoding="utf-8"), str(path))


def load_counts(path: str | os.PathLike | None = None) -> dict[int, int]:
    """Number of groups of each order, from the tab-separated counts table."""
    if path is None:
        text = (resources.files("ordersum") / "data" / "counts.tsv").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    counts = {}
    for line in text.splitlines():
        if not line.strip() or line.startswith("#") or line.startswith("order"):
            continue
        a, b = line.split("\t")
        counts[int(a)] = int(b)
    return counts


def select(entries: Iterable[CatalogEntry], orders: Iterable[int] | None = None) -> list[CatalogEntry]:
    """Entries whose order is in ``orders`` (all when None), sorted by (order, index)."""
    wanted = None if orders is None else set(orders)
    out = [e for e in entries if wanted is None or e.order in wanted]
    out.sort(key=lambda e: (e.order, e.index))
    return out


def find_entry(entries: Iterable[CatalogEntry], order: int, index: int) -> CatalogEntry:
    for e in entries:
        if e.order == order and e.index == index:
            return e
    raise KeyError(f"no catalog entry {order}/{index}")


@dataclass
class ValidationReport:
    checked: int = 0
    counts: dict[int, int] = field(default_factory=dict)
    pairs_screened: int = 0
    errors: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


def _check_entry(entry: CatalogEntry) -> list[str]:
    errors = []
    g = entry.group
    where = f"{entry.group_id} (line {entry.line})"
    if g.order != entry.order:
        errors.append(f"{where}: generators give order {g.order}, declared {entry.order}")
        return errors
    if g.closure_order() != g.order:
        errors.append(f"{where}: closure order {g.closure_order()} differs from chain order {g.order}")
    value = psi(g)
    if entry.expected_psi is not None and value != entry.expected_psi:
        errors.append(f"{where}: psi is {value}, declared {entry.expected_psi}")
    cyclic_value = psi_cyclic(entry.order)
    is_cyclic = int(g.element_orders().max()) == entry.order
    if value > cyclic_value or (value == cyclic_value) != is_cyclic:
        errors.append(f"{where}: psi {value} breaks cyclic maximality (psi(C_n) = {cyclic_value})")
    return errors


def _check_order_pairwise(entries: Sequence[CatalogEntry]) -> tuple[int, list[str]]:
    buckets = defaultdict(list)
    for e in entries:
        buckets[fingerprint(e.group.table)].append(e)
    pairs = 0
    errors = []
    for same in buckets.values():
        for i, a in enumerate(same):
            for b in same[i + 1:]:
                pairs += 1
                if tables_isomorphic(a.group.table, b.group.table):
                    errors.append(f"{a.group_id} and {b.group_id} are isomorphic")
    return pairs, errors


def validate_catalog(entries: Sequence[CatalogEntry], counts: dict[int, int] | None = None, *,
                     orders: Iterable[int] | None = None, pairwise_max: int = PAIRWISE_SCREEN_MAX,
                     jobs: int = 1) -> ValidationReport:
    """Regenerate every entry and check order, psi, counts and non-isomorphism.

    Within each order up to ``pairwise_max`` the entries are screened by
    invariant fingerprint; entries sharing a fingerprint are tested for
    isomorphism explicitly.  ``counts`` (the bundled table by default) is
    compared only for orders that are fully present in ``orders``.
    """
    chosen = select(entries, orders)
    report = ValidationReport(checked=len(chosen))
    by_order: dict[int, list[CatalogEntry]] = defaultdict(list)
    for e in chosen:
        by_order[e.order].append(e)
    report.counts = {n: len(v) for n, v in sorted(by_order.items())}

    if jobs > 1 and len(chosen) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_entry, chosen, chunksize=8))
    else:
        results = [_check_entry(e) for e in chosen]
    for errs in results:
        report.errors.extend(errs)

    counts = load_counts() if counts is None else counts
    span = sorted(set(orders)) if orders is not None else range(1, max(counts, default=0) + 1)
    for n in span:
        if n in counts and len(by_order.get(n, [])) != counts[n]:
            report.errors.append(f"order {n}: {len(by_order.get(n, []))} entries, expected {counts[n]}")

    for n, group_entries in sorted(by_order.items()):
        if n > pairwise_max or any(e.group.order != n for e in group_entries):
            continue
        pairs, errs = _check_order_pairwise(group_entries)
        report.pairs_screened += pairs
        report.errors.extend(errs)
    return report
