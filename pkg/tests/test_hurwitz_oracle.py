import itertools
import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trophurwitz.hurwitz_oracle import (
    BoundaryCase,
    BoundaryDatum,
    HurwitzQuery,
    boundary_multiplicity,
    clear_memo,
    format_fraction,
    hurwitz_marked,
    hurwitz_number,
    hurwitz_unmarked,
    hurwitz_unmarked_naive,
    simple_count,
)
from trophurwitz.symmetric_group import partitions


def Q(d, u, v, w, r=0):
    return HurwitzQuery(d, (u, v, w), r)


def test_simple_count_examples():
    assert simple_count(5, ((3, 1, 1), (5,), (3, 2)), 1) == 1
    assert simple_count(5, ((4, 1), (5,), (3, 2)), 1) == 0
    assert simple_count(1, ((1,), (1,), (1,)), 0) == 0
    assert simple_count(4, ((4,), (4,), (4,)), 0) == -3


def test_unmarked_examples():
    assert hurwitz_unmarked(Q(3, (3,), (3,), (3,))) == Fraction(1, 3)
    assert hurwitz_unmarked(Q(2, (1, 1), (2,), (2,))) == Fraction(1, 2)
    assert hurwitz_unmarked(Q(1, (1,), (1,), (1,))) == 1


@pytest.mark.parametrize("profile, expected", [
    (((4, 1), (5,), (3, 2)), 2),
    (((2, 3), (5,), (2, 3)), 1),
    (((1, 1, 1, 2), (5,), (2, 3)), 6),
    (((1, 1), (2,), (2,)), 1),
    (((3,), (3,), (3,)), Fraction(1, 3)),
    (((3, 1, 1), (2, 3), (2, 3)), 2),
    (((3, 1, 1), (4, 1), (2, 3)), 4),
    (((3, 1, 1), (5,), (5,)), 4),
    (((3, 1, 1), (5,), (3, 1, 1)), 4),
    (((3, 1, 1), (5,), (2, 2, 1)), 4),
])
def test_marked_values_at_r0(profile, expected):
    d = sum(profile[0])
    assert hurwitz_marked(HurwitzQuery(d, profile, 0)) == expected


def test_worked_example_total():
    q = Q(5, (3, 1, 1), (5,), (3, 2), r=1)
    assert hurwitz_marked(q) == 30
    assert hurwitz_unmarked(q) == 15
    assert hurwitz_number(5, (3, 1, 1), (5,), (3, 2), g=1) == 30
    assert hurwitz_number(5, (3, 1, 1), (5,), (3, 2), g=1, marked=False) == 15


def test_hurwitz_number_arguments():
    with pytest.raises(ValueError):
        hurwitz_number(2, (2,), (2,), (2,))
    with pytest.raises(ValueError):
        hurwitz_number(2, (2,), (2,), (2,), r=1, g=0)
    assert hurwitz_number(4, (4,), (4,), (4,), g=0) == 0


def test_query_validation():
    with pytest.raises(ValueError):
        Q(3, (2,), (3,), (3,))
    with pytest.raises(ValueError):
        Q(0, (), (), ())
    with pytest.raises(ValueError):
        Q(2, (2,), (2,), (2,), r=-1)
    assert Q(3, (1, 2), (3,), (3,)).profile[0] == (2, 1)


def test_invalid_genus_gives_zero():
    q = Q(3, (3,), (3,), (3,), r=1)
    assert q.genus == Fraction(3, 2) and not q.has_valid_genus
    assert hurwitz_unmarked(q) == 0


def _small_queries(max_d, max_r):
    for d in range(1, max_d + 1):
        for prof in itertools.combinations_with_replacement(list(partitions(d)), 3):
            for r in range(max_r + 1):
                yield HurwitzQuery(d, prof, r)


@pytest.mark.parametrize("q", list(_small_queries(3, 2)), ids=str)
def test_class_iteration_matches_naive(q):
    assert hurwitz_unmarked(q, use_memo=False) == hurwitz_unmarked_naive(q)


@pytest.mark.parametrize("q", list(_small_queries(4, 2)), ids=str)
def test_pinned_matches_full_iteration(q):
    assert hurwitz_unmarked(q, pinned=True, use_memo=False) == hurwitz_unmarked(q, use_memo=False)


def test_parity_obstruction():
    for q in _small_queries(4, 3):
        if not q.has_valid_genus:
            assert hurwitz_unmarked(q) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda d: st.tuples(
    st.just(d), st.lists(st.sampled_from(list(partitions(d))), min_size=3, max_size=3), st.integers(0, 2))))
def test_symmetric_in_the_three_profiles(data):
    d, prof, r = data
    values = {hurwitz_marked(HurwitzQuery(d, p, r), use_memo=False) for p in itertools.permutations(prof)}
    assert len(values) == 1


def test_memo_agrees_with_fresh_and_is_thread_safe():
    clear_memo()
    queries = list(_small_queries(4, 1))
    fresh = [hurwitz_unmarked(q, use_memo=False) for q in queries]
    results = [None] * len(queries)

    def work(offset):
        for i in range(offset, len(queries), 4):
            results[i] = hurwitz_unmarked(q := queries[i])
            assert hurwitz_unmarked(q) == results[i]

    threads = [threading.Thread(target=work, args=(k,)) for k in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert results == fresh
    assert [hurwitz_unmarked(q) for q in queries] == fresh


def test_boundary_multiplicity_examples():
    cut = BoundaryDatum(BoundaryCase.CUT_SAME_COMPONENT, 1, 2, (Q(5, (1, 1, 1, 2), (5,), (2, 3)),))
    assert boundary_multiplicity(cut) == 12
    join = BoundaryDatum(BoundaryCase.JOIN, 3, 2, (Q(5, (3, 1, 1), (5,), (5,)),))
    assert boundary_multiplicity(join) == 20
    two = BoundaryDatum(BoundaryCase.CUT_TWO_COMPONENTS, 2, 3, (Q(2, (1, 1), (2,), (2,)), Q(3, (3,), (3,), (3,))))
    assert boundary_multiplicity(two) == 2


def test_boundary_multiplicity_halves_equal_cut():
    datum = BoundaryDatum(BoundaryCase.CUT_SAME_COMPONENT, 1, 1, (Q(5, (3, 1, 1), (5,), (3, 1, 1)),))
    assert boundary_multiplicity(datum) == 2


@pytest.mark.parametrize("case, subs", [
    (BoundaryCase.JOIN, ()),
    (BoundaryCase.CUT_TWO_COMPONENTS, (Q(1, (1,), (1,), (1,)),)),
    (BoundaryCase.CUT_SAME_COMPONENT, (Q(2, (2,), (2,), (2,), r=1),)),
])
def test_boundary_datum_rejects_malformed(case, subs):
    with pytest.raises(ValueError):
        BoundaryDatum(case, 1, 1, subs)


def test_format_fraction():
    assert format_fraction(Fraction(1, 3)) == "1/3"
    assert format_fraction(Fraction(30)) == "30"
    assert format_fraction(Fraction(-4, 2)) == "-2"
