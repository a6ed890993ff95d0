import pytest

from fintop.enumerator import (
    SearchSpec,
    enum_spaces,
    enum_spaces_by_families,
    enum_tables,
    enum_topmonoids,
    first_hit,
    search,
)
from fintop.errors import SizeOutOfRange, UnknownLaw
from fintop.finspace import FiniteSpace
from fintop.instances import serialize
from fintop.laws import Verdict


@pytest.mark.parametrize("n, count", [(1, 1), (2, 4), (3, 29), (4, 355)])
def test_space_counts_by_two_generators(n, count):
    a = {s.opens for s in enum_spaces(n)}
    b = set(enum_spaces_by_families(n))
    assert len(a) == count and a == b


def test_five_point_count():
    assert sum(1 for _ in enum_spaces(5)) == 6942


def test_size_limits():
    with pytest.raises(SizeOutOfRange):
        list(enum_spaces(0))
    with pytest.raises(SizeOutOfRange):
        list(enum_spaces(6))
    with pytest.raises(SizeOutOfRange):
        list(enum_tables(5))
    with pytest.raises(SizeOutOfRange):
        SearchSpec("L1", 0)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 8), (3, 113), (4, 3492)])
def test_semigroup_counts(n, count):
    assert sum(1 for _ in enum_tables(n)) == count


def test_monoid_counts():
    assert [sum(1 for _ in enum_tables(n, monoid=True)) for n in (1, 2, 3, 4)] == [1, 4, 33, 624]


def test_topmonoid_examples(m0, z2):
    assert sum(1 for _ in enum_topmonoids(1)) == 1
    pool = list(enum_topmonoids(2, {"monoid", "topological", "open_shifts"}))
    renamed = {serialize(tm) for tm in pool}
    from fintop.instances import from_document, to_document

    def relabel(tm, names):
        doc = to_document(tm)
        mapping = dict(zip(doc["points"], names))
        doc = {
            "kind": "monoid",
            "points": names,
            "opens": [[mapping[p] for p in u] for u in doc["opens"]],
            "table": [[mapping[p] for p in r] for r in doc["table"]],
        }
        return serialize(from_document(doc))

    assert relabel(m0, ["a", "b"]) in renamed
    assert relabel(z2, ["a", "b"]) in renamed
    groups = list(enum_topmonoids(2, {"monoid", "cancellative"}))
    assert len(groups) == 8  # two labelings of Z2 under four topologies
    assert all(tm.algebra.is_group for tm in groups)


def test_stream_is_sorted_and_sound():
    stream = list(enum_spaces(3))
    keys = [serialize(s) for s in stream]
    assert keys == sorted(keys)
    for s in stream:
        FiniteSpace.from_min_open(s.points, s.min_open)
    tms = list(enum_topmonoids(2))
    assert [serialize(t) for t in tms] == [serialize(t) for t in enum_topmonoids(2)]


def test_search_reports():
    res = search(SearchSpec("L3", 3))
    assert not res.found and res.examined > 0
    res = search(SearchSpec("L1", 2, frozenset({"open_shifts"})))
    assert not res.found and res.examined == 13
    again = search(SearchSpec("L1", 2, frozenset({"open_shifts"})))
    assert again.examined == res.examined


def test_search_finds_gamma_counterexample():
    res = search(SearchSpec("L15", 3))
    assert res.found and res.report.verdict is Verdict.FAILS
    assert serialize(res.counterexample) == (
        '{"kind": "monoid", "points": ["a", "b", "c"], "opens": [[], ["a", "b", "c"]], '
        '"table": [["a", "a", "a"], ["a", "b", "c"], ["c", "c", "c"]]}\n'
    )
    assert first_hit([search(SearchSpec("L15", 2)), res]) is res


def test_search_budget_and_errors():
    res = search(SearchSpec("L10", 3, budget=5))
    assert res.examined == 5
    with pytest.raises(UnknownLaw):
        search(SearchSpec("L42", 2))
    with pytest.raises(ValueError):
        search(SearchSpec("L10", 2, frozenset({"monoid"})))
