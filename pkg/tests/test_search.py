import csv
import io
from itertools import product

import pytest

from obkit.homology import AbelianGroup, h1
from obkit.openbook import Letter, OpenBook, PlanarPage, annulus, canonicalize, disk, norm, plumb, word_key
from obkit.search import (
    SearchConfig,
    _feasible_totals,
    additivity_csv,
    additivity_experiment,
    cg_upper_bound,
    curves,
    enumerate_books,
    search,
    verify_annulus_family,
)


def brute_force_classes(r_max, total_max):
    """Canonical forms of every raw word within the bounds."""
    seen = set()
    for r in range(1, r_max + 1):
        page = PlanarPage(0, r)
        seen.add(OpenBook(page))
        letters = [Letter(c, e) for c in curves(r) for e in range(-total_max, total_max + 1) if e]

        def grow(word, budget):
            for l in letters:
                if abs(l.exponent) <= budget:
                    w = word + (l,)
                    seen.add(canonicalize(OpenBook(page, w)))
                    grow(w, budget - abs(l.exponent))

        grow((), total_max)
    return seen


def test_enumerate_disk_only():
    assert list(enumerate_books(SearchConfig(1, 5))) == [disk()]


def test_enumerate_annulus_words():
    books = list(enumerate_books(SearchConfig(2, 3, min_boundary=2)))
    assert len(books) == 7
    assert set(books) == {annulus(m) for m in range(-3, 4)}
    assert list(enumerate_books(SearchConfig(2, 3)))[0] == disk()


@pytest.mark.parametrize("r_max, total", [(2, 4), (3, 3), (4, 2)])
def test_enumerate_complete_and_unique(r_max, total):
    books = list(enumerate_books(SearchConfig(r_max, total)))
    assert len(books) == len(set(books))
    assert all(canonicalize(ob) == ob for ob in books)
    assert set(books) == brute_force_classes(r_max, total)


def test_enumerate_respects_bounds_and_order():
    config = SearchConfig(3, 4)
    books = list(enumerate_books(config))
    for ob in books:
        assert norm(ob) <= config.max_boundary - 1
        assert ob.total_exponent <= config.max_total_exponent
    keys = [(ob.boundary_count, ob.total_exponent, word_key(ob.word)) for ob in books]
    assert keys == sorted(keys)


def test_exponent_bound_filters_merged_letters():
    books = list(enumerate_books(SearchConfig(2, 4, exponent_bound=2)))
    assert {ob for ob in books if ob.boundary_count == 2} == {annulus(m) for m in range(-2, 3)}


def test_norm_cap():
    books = list(enumerate_books(SearchConfig(4, 2, norm_cap=1)))
    assert max(norm(ob) for ob in books) == 1


def test_enumerate_parallel_matches_serial():
    config = SearchConfig(3, 3)
    assert list(enumerate_books(config, jobs=3)) == list(enumerate_books(config))


def test_cg_upper_bound_lens_space():
    ob, n = cg_upper_bound(SearchConfig(2, 6), AbelianGroup.cyclic(5))
    assert ob == annulus(5)
    assert n == 1


def test_cg_upper_bound_trivial_is_disk():
    assert cg_upper_bound(SearchConfig(2, 3), AbelianGroup()) == (disk(), 0)


def test_cg_upper_bound_needs_target():
    with pytest.raises(ValueError):
        cg_upper_bound(SearchConfig(2, 3))


def test_cg_upper_bound_order_31():
    target = AbelianGroup.cyclic(31)
    # at r = 3 the order is |ab + bc + ca| for net exponents a, b, c; 31 needs |a|+|b|+|c| >= 10
    assert cg_upper_bound(SearchConfig(3, 8), target) is None
    ob, n = cg_upper_bound(SearchConfig(3, 10), target)
    assert n == 2 and ob.boundary_count == 3
    assert h1(ob) == target


def test_min_l1_norm_for_order_31():
    best = min(
        abs(a) + abs(b) + abs(c)
        for a, b, c in product(range(-12, 13), repeat=3)
        if abs(a * b + b * c + c * a) == 31
    )
    assert best == 10


@pytest.mark.parametrize("target", ["0", "Z", "Z/2", "Z/3", "Z^2", "Z + Z/2", "Z/5", "Z/2 + Z/2", "Z/7"])
def test_cg_upper_bound_is_first_match_in_search_order(target):
    config = SearchConfig(3, 4)
    group = AbelianGroup.parse(target)
    first = next((ob for ob in enumerate_books(config) if h1(ob) == group), None)
    found = cg_upper_bound(config, group)
    if first is None:
        assert found is None
    else:
        assert found == (first, norm(first))
        assert not any(h1(ob) == group for ob in enumerate_books(config) if norm(ob) < found[1])


def test_feasible_totals_over_approximate():
    for ob in enumerate_books(SearchConfig(3, 5, min_boundary=3)):
        assert ob.total_exponent in _feasible_totals(3, 5, h1(ob))


def test_search_report_buckets():
    config = SearchConfig(3, 3)
    report = search(config)
    books = list(enumerate_books(config))
    assert report.total == len(books) == sum(b.count for b in report.buckets.values())
    for bucket in report.buckets.values():
        members = [ob for ob in books if h1(ob) == bucket.group]
        assert bucket.count == len(members)
        assert bucket.min_norm == min(map(norm, members))
        assert bucket.witness == next(ob for ob in members if norm(ob) == bucket.min_norm)


def test_search_report_csv():
    text = search(SearchConfig(2, 2)).to_csv()
    data = [line for line in text.splitlines(keepends=True) if not line.startswith("#")]
    rows = list(csv.reader(io.StringIO("".join(data))))
    assert rows[0] == ["group", "count", "min_norm", "witness"]
    assert rows[1] == ["0", "3", "0", "page 0 1"]
    assert rows[2] == ["Z/2", "2", "1", "page 0 2\ntwist 2 1"]
    assert rows[3] == ["Z", "1", "1", "page 0 2"]
    assert "H1-level shadow" in text


def test_search_target_filter():
    report = search(SearchConfig(3, 3, target=AbelianGroup.cyclic(2)))
    assert list(report.buckets) == [AbelianGroup.cyclic(2)]


def test_verify_annulus_family():
    report = verify_annulus_family(10)
    assert len(report.rows) == 21
    assert all(row.group.is_cyclic for row in report.rows)
    by_m = {row.m: row for row in report.rows}
    assert by_m[1].group.is_trivial
    assert by_m[0].group == AbelianGroup(1)
    assert by_m[-7].manifold == "L(7,1)"
    assert report.words_checked > 0
    with pytest.raises(ValueError):
        verify_annulus_family(0)


def test_additivity_experiment():
    rows = additivity_experiment(SearchConfig(3, 2))
    assert rows
    report = search(SearchConfig(3, 2))
    for row in rows:
        left, right = report.buckets[row.left].witness, report.buckets[row.right].witness
        plumbed = plumb(left, right)
        assert h1(plumbed) == row.summed
        assert norm(plumbed) == row.plumbed_norm
    text = additivity_csv(rows)
    assert text.startswith("left,right,sum,plumbed_norm,observed_min,relation\n")
    assert "no statement about additivity" in text
