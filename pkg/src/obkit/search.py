"""Bounded enumeration of planar open books and H_1 bucketing.

Books are produced as canonical words, ordered by ``(r, total exponent,
word)`` where words compare letter by letter under ``letter_key``.
The space splits into independent work units ``(r, total, first letter)``;
running them on several processes changes nothing in the output.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from math import comb
from typing import Iterator

from .contact import catalog_lookup
from .fileformat import serialize_open_book
from .homology import AbelianGroup, h1, h1_from_matrix, h1_reduced
from .openbook import (
    Curve, Letter, OpenBook, PlanarPage, annulus, canonicalize, is_canonical, letter_key, norm,
)

# above this many net-exponent vectors the layer pre-filter is skipped
_FEASIBILITY_LIMIT = 200_000

FOOTER = (
    "H1-level shadow only: manifolds with equal H1 (e.g. L(5,1) and L(5,2)) are not told apart",
    "a witness bounds the contact genus of some manifold with that H1; lower bounds are never claimed",
    "counts are canonical word classes without mapping class group relations (an over-count)",
)


@dataclass(frozen=True)
class SearchConfig:
    max_boundary: int = 3
    max_total_exponent: int = 4
    # per-letter bound, applied to merged (canonical) letters; None means no extra bound
    exponent_bound: int | None = None
    target: AbelianGroup | None = None
    norm_cap: int | None = None
    min_boundary: int = 1

    def __post_init__(self):
        if self.max_boundary < 1 or self.min_boundary < 1:
            raise ValueError("boundary bounds must be >= 1")
        if self.max_total_exponent < 0:
            raise ValueError("max_total_exponent must be >= 0")
        if self.exponent_bound is not None and self.exponent_bound < 0:
            raise ValueError("exponent_bound must be >= 0")
        if self.norm_cap is not None and self.norm_cap < 0:
            raise ValueError("norm_cap must be >= 0")

    @property
    def letter_bound(self) -> int:
        if self.exponent_bound is None:
            return self.max_total_exponent
        return min(self.exponent_bound, self.max_total_exponent)

    def boundaries(self) -> range:
        top = self.max_boundary
        if self.norm_cap is not None:
            top = min(top, self.norm_cap + 1)
        return range(self.min_boundary, top + 1)

    def describe(self) -> str:
        target = "-" if self.target is None else str(self.target)
        cap = "-" if self.norm_cap is None else self.norm_cap
        bound = "-" if self.exponent_bound is None else self.exponent_bound
        return (
            f"boundary={self.min_boundary}..{self.max_boundary} "
            f"max_total_exponent={self.max_total_exponent} exponent_bound={bound} "
            f"target={target} norm_cap={cap}"
        )


def curves(r: int) -> list[Curve]:
    holes = range(1, r)
    return sorted(Curve(c) for k in range(1, r) for c in combinations(holes, k))


def alphabet(r: int, bound: int) -> list[Letter]:
    exps = [e for e in range(-bound, bound + 1) if e]
    return sorted((Letter(c, e) for c in curves(r) for e in exps), key=letter_key)


def _words_from(r: int, total: int, first: Letter, bound: int) -> Iterator[OpenBook]:
    """Canonical words on the ``r``-page starting with ``first``, of exact total exponent."""
    page = PlanarPage(0, r)
    letters = [l for l in alphabet(r, bound) if letter_key(l) >= letter_key(first)]
    word = [first]

    def extend(rem):
        if rem == 0:
            if len(word) > 1 and word[-1].curve == first.curve:
                return
            ob = OpenBook(page, tuple(word))
            if is_canonical(ob):
                yield ob
            return
        last = word[-1].curve
        for l in letters:
            if l.curve == last or abs(l.exponent) > rem:
                continue
            word.append(l)
            yield from extend(rem - abs(l.exponent))
            word.pop()

    rem = total - abs(first.exponent)
    if rem >= 0:
        yield from extend(rem)


def work_units(config: SearchConfig) -> list[tuple[int, int, Letter | None]]:
    units = []
    for r in config.boundaries():
        units.append((r, 0, None))
        if r == 1:
            continue
        for total in range(1, config.max_total_exponent + 1):
            for first in alphabet(r, min(config.letter_bound, total)):
                if abs(first.exponent) <= total:
                    units.append((r, total, first))
    return units


def _run_unit(unit, bound: int, with_h1: bool):
    r, total, first = unit
    if first is None:
        books = [OpenBook(PlanarPage(0, r))]
    else:
        books = list(_words_from(r, total, first, bound))
    if with_h1:
        return [(ob, h1_reduced(ob)) for ob in books]
    return [(ob, None) for ob in books]


def _unit_results(config: SearchConfig, jobs: int, with_h1: bool):
    units = work_units(config)
    bound = config.letter_bound
    if jobs <= 1:
        for unit in units:
            yield from _run_unit(unit, bound, with_h1)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunks = pool.map(
            _run_unit, units, [bound] * len(units), [with_h1] * len(units), chunksize=4
        )
        for chunk in chunks:
            yield from chunk


def enumerate_books(config: SearchConfig, jobs: int = 1) -> Iterator[OpenBook]:
    """Every canonical planar open book within the bounds, once, in search order."""
    for ob, _ in _unit_results(config, jobs, with_h1=False):
        yield ob


@dataclass
class Bucket:
    group: AbelianGroup
    count: int = 0
    min_norm: int | None = None
    witness: OpenBook | None = None


@dataclass
class SearchReport:
    config: SearchConfig
    buckets: dict[AbelianGroup, Bucket] = field(default_factory=dict)
    total: int = 0

    def add(self, ob: OpenBook, group: AbelianGroup) -> None:
        self.total += 1
        bucket = self.buckets.setdefault(group, Bucket(group))
        bucket.count += 1
        n = norm(ob)
        if bucket.min_norm is None or n < bucket.min_norm:
            bucket.min_norm = n
            bucket.witness = ob

    def rows(self) -> list[Bucket]:
        return sorted(self.buckets.values(), key=lambda b: b.group.sort_key())

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write(f"# search {self.config.describe()}\n")
        out.write("group,count,min_norm,witness\n")
        writer = csv.writer(out, lineterminator="\n", quoting=csv.QUOTE_NONNUMERIC)
        for b in self.rows():
            writer.writerow([str(b.group), b.count, b.min_norm, serialize_open_book(b.witness).rstrip("\n")])
        out.write(f"# total books: {self.total}, groups: {len(self.buckets)}\n")
        for line in FOOTER:
            out.write(f"# {line}\n")
        return out.getvalue()


def search(config: SearchConfig, jobs: int = 1) -> SearchReport:
    report = SearchReport(config)
    for ob, group in _unit_results(config, jobs, with_h1=True):
        if config.target is not None and group != config.target:
            continue
        report.add(ob, group)
    return report


def _net_vectors(dim: int, budget: int):
    """Integer vectors of the given dimension with L1 norm at most ``budget``."""
    if dim == 0:
        yield ()
        return
    for head in range(-budget, budget + 1):
        for tail in _net_vectors(dim - 1, budget - abs(head)):
            yield (head, *tail)


def _feasible_totals(r: int, max_total: int, target: AbelianGroup) -> set[int]:
    """Totals at which an ``r``-page book could have H_1 equal to ``target``.

    H_1 only sees the net exponent on each curve, and a word's total exponent
    is at least, and of the same parity as, the L1 norm of that vector. This
    over-approximates, so it only ever skips layers with no match.
    """
    cs = curves(r)
    everything = set(range(max_total + 1))
    d = len(cs)
    if sum(comb(d, k) * comb(max_total, k) * 2**k for k in range(d + 1)) > _FEASIBILITY_LIMIT:
        return everything
    n = r - 1
    feasible = set()
    for vec in _net_vectors(d, max_total):
        q = [[0] * n for _ in range(n)]
        for c, e in zip(cs, vec):
            if e:
                for i in c.holes:
                    for j in c.holes:
                        q[i - 1][j - 1] += e
        if h1_from_matrix(q) == target:
            s = sum(map(abs, vec))
            feasible.update(range(s, max_total + 1, 2))
    return feasible


def cg_upper_bound(config: SearchConfig, target: AbelianGroup | None = None):
    """First book in search order with H_1 = target, with its norm, or None.

    The norm of a planar book is ``r - 1`` and ``r`` is the outer sort key, so
    the first hit has minimal norm among all enumerated books with that H_1.
    """
    target = config.target if target is None else target
    if target is None:
        raise ValueError("cg_upper_bound needs a target group")
    bound = config.letter_bound
    for r in config.boundaries():
        if r == 1:
            if target.is_trivial:
                ob = OpenBook(PlanarPage(0, 1))
                return ob, norm(ob)
            continue
        feasible = _feasible_totals(r, config.max_total_exponent, target)
        for total in sorted(feasible):
            if total == 0:
                candidates = [OpenBook(PlanarPage(0, r))]
            else:
                candidates = (
                    ob
                    for first in alphabet(r, min(bound, total))
                    for ob in _words_from(r, total, first, bound)
                )
            for ob in candidates:
                if h1_reduced(ob) == target:
                    return ob, norm(ob)
    return None


class HomologyMismatch(AssertionError):
    pass


@dataclass
class AnnulusRow:
    m: int
    book: OpenBook
    group: AbelianGroup
    manifold: str
    structure: str


@dataclass
class AnnulusReport:
    rows: list[AnnulusRow]
    words_checked: int

    def to_text(self) -> str:
        lines = ["m,h1,manifold,structure"]
        lines += [f"{r.m},{r.group},{r.manifold},{r.structure}" for r in self.rows]
        lines.append(f"# {self.words_checked} annulus words all reduce to a single power t^m")
        lines.append("# every row is cyclic: circle bundles over S^2 with Euler number m")
        return "\n".join(lines) + "\n"


def verify_annulus_family(m_max: int, word_check_total: int = 8) -> AnnulusReport:
    """Check H_1(annulus t^m) = Z/|m| for |m| <= m_max and that annulus words collapse to t^m."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    rows = []
    for m in range(-m_max, m_max + 1):
        ob = annulus(m)
        group = h1(ob)
        expected = AbelianGroup.cyclic(abs(m))
        if group != expected:
            raise HomologyMismatch(f"h1(annulus t^{m}) = {group}, expected {expected}")
        entry = catalog_lookup(ob)
        rows.append(AnnulusRow(m, ob, group, entry.manifold_name, str(entry.label)))

    core = Curve.of(1)
    page = PlanarPage(0, 2)
    checked = 0
    for total in range(1, min(m_max, word_check_total) + 1):
        for parts in _compositions(total):
            for signs in product((1, -1), repeat=len(parts)):
                word = tuple(Letter(core, s * p) for s, p in zip(signs, parts))
                ob = canonicalize(OpenBook(page, word))
                net = sum(s * p for s, p in zip(signs, parts))
                if ob != annulus(net):
                    raise HomologyMismatch(f"annulus word {word} did not reduce to t^{net}")
                checked += 1
    return AnnulusReport(rows, checked)


def _compositions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first, *rest)


@dataclass
class AdditivityRow:
    left: AbelianGroup
    right: AbelianGroup
    summed: AbelianGroup
    plumbed_norm: int
    observed_min: int | None

    @property
    def relation(self) -> str:
        if self.observed_min is None:
            return "unseen"
        if self.observed_min < self.plumbed_norm:
            return "<"
        return "=" if self.observed_min == self.plumbed_norm else ">"


def additivity_experiment(config: SearchConfig, jobs: int = 1) -> list[AdditivityRow]:
    """Compare min norms of H_1 buckets against plumbed factor witnesses.

    A ``<`` row is not evidence against additivity of contact genus: equal H_1
    does not mean equal manifold.
    """
    report = search(SearchConfig(
        config.max_boundary, config.max_total_exponent, config.exponent_bound,
        None, config.norm_cap, config.min_boundary,
    ), jobs)
    buckets = report.rows()
    rows = []
    for a, b in combinations_with_replacement(buckets, 2):
        if a.group.is_trivial or b.group.is_trivial:
            continue
        summed = a.group + b.group
        seen = report.buckets.get(summed)
        rows.append(AdditivityRow(
            a.group, b.group, summed, a.min_norm + b.min_norm,
            None if seen is None else seen.min_norm,
        ))
    return rows


def additivity_csv(rows: list[AdditivityRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["left", "right", "sum", "plumbed_norm", "observed_min", "relation"])
    for row in rows:
        writer.writerow([
            row.left, row.right, row.summed, row.plumbed_norm,
            "-" if row.observed_min is None else row.observed_min, row.relation,
        ])
    out.write("# experiment only: no statement about additivity of contact genus is asserted\n")
    for line in FOOTER[:1]:
        out.write(f"# {line}\n")
    return out.getvalue()
