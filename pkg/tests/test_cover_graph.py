import json
import random
from collections import Counter

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _battery import all_battery_covers, geometric_shrink
from _builders import build, loop_cover, single_edge, trivial
from trophurwitz import cover_graph as cg
from trophurwitz.cover_graph import CENTER, CoverType, LinePosition, Ray
from trophurwitz.enumeration import BranchConfiguration, enumerate_covers, star_cover
from trophurwitz.symmetric_group import MarkedPartition

WORKED = (5, ((3, 1, 1), (5,), (3, 2)), 1)


def worked_covers(ray):
    d, prof, g = WORKED
    return enumerate_covers(d, prof, g, BranchConfiguration(**{ray: (1,)}))


@pytest.fixture(scope="module")
def sample():
    covers = all_battery_covers()
    rng = random.Random(3)
    return rng.sample(covers, 300)


# -- validation and basic invariants -----------------------------------------


def test_star_cover_validates():
    s = star_cover(*WORKED)
    assert cg.validate(s) == []
    assert cg.degree(s) == 5 and cg.genus(s) == 1
    assert [p.sizes for p in cg.profile(s)] == [(3, 1, 1), (5,), (3, 2)]
    assert not cg.is_trivalent_type(s)


def test_negative_rh_number_reported():
    c = build(3, [("c1", 0, (), "c")], [], [("c1", 3, "u", "a"), ("c1", 3, "v", "b"), ("c1", 3, "w", "x")])
    problems = cg.validate(c)
    assert any("-2" in p for p in problems)
    with pytest.raises(ValueError):
        cg.check(c)


def test_trivial_cover():
    c = trivial()
    assert cg.validate(c) == []
    assert c.rh_number("c1") == 0
    assert cg.degree(c) == 1 and cg.genus(c) == 0
    assert [p.sizes for p in cg.profile(c)] == [(1,), (1,), (1,)]
    assert cg.is_trivalent_type(c)
    assert cg.wiener_count(c) == 0


def test_disconnected_cover_rejected():
    c = build(1, [("c1", 0, (), "c"), ("c2", 0, (), "c")], [],
              [("c1", 1, "u", "a"), ("c1", 1, "v", "b"), ("c2", 1, "w", "x")])
    assert cg.validate(c)
    with pytest.raises(ValueError):
        cg.degree(c)


def test_parallel_edges_raise_genus():
    c = loop_cover(1, 2, (2, 1), (3,), 0)
    assert cg.betti_number(c) == 1
    assert cg.genus(c) == 1


@pytest.mark.parametrize("mutate, phrase", [
    (lambda c: CoverType(c.vertices, c.edges, c.ends[:-1], c.degree), ""),
    (lambda c: CoverType(c.vertices[:1], c.edges, c.ends, c.degree), ""),
    (lambda c: CoverType(c.vertices, c.edges, c.ends, c.degree + 1), ""),
])
def test_corruptions_are_reported(mutate, phrase):
    c = loop_cover(1, 2, (2, 1), (3,), 0)
    try:
        bad = mutate(c)
    except ValueError:
        return
    assert cg.validate(bad)


def test_wrong_label_count_reported():
    c = loop_cover(1, 2, (2, 1), (3,), 0)
    vs = tuple(v if v.id != "u1" else cg.CoverVertex("u1", 0, frozenset({1, 2}), v.image) for v in c.vertices)
    assert cg.validate(CoverType(vs, c.edges, c.ends, c.degree))


def test_line_position_invariant():
    with pytest.raises(ValueError):
        LinePosition(Ray.U, 0)
    with pytest.raises(ValueError):
        LinePosition(Ray.CENTER, 1)


def test_every_enumerated_cover_is_consistent(sample):
    for c in sample:
        assert cg.validate(c) == []
        ends = {ray: sum(x.weight for x in c.ends if x.ray is ray) for ray in cg.RAYS}
        assert set(ends.values()) == {cg.degree(c)}
        assert c.label_count == sum(len(p) for p in cg.profile(c)) + 2 * cg.genus(c) - 2 - c.degree


# -- wieners and trivalence --------------------------------------------------


def test_wiener_counts_in_worked_example():
    for c in worked_covers("w"):
        (x,) = c.ray_vertices()
        ins = [e.weight for e in c.incident(x.id)]
        if ins == [1, 1]:
            assert cg.wiener_count(c) == 1
        else:
            assert cg.wiener_count(c) == 0
    cut_loops = [c for c in worked_covers("u") if len(c.edges) == 2]
    assert cut_loops and all(cg.wiener_count(c) == 0 for c in cut_loops)


def test_resolutions_are_trivalent():
    assert all(cg.is_trivalent_type(c) for ray in "uvw" for c in worked_covers(ray))


def test_tree_has_no_wieners(sample):
    for c in sample:
        if cg.betti_number(c) == 0:
            assert cg.wiener_count(c) == 0


# -- contraction -------------------------------------------------------------


def test_contract_nothing():
    c = loop_cover(1, 2, (2, 1), (3,), 0)
    assert cg.contract(c, ()) == c


def test_contract_loop_to_star():
    c = loop_cover(1, 2, (2, 1), (3,), 0)
    s = cg.contract(c, {"e1", "e2"})
    assert cg.validate(s) == []
    (v,) = s.vertices
    assert v.at_center and v.genus == 1 and v.labels == {1}
    assert cg.canonical_key(s) == cg.canonical_key(star_cover(3, cg.profile(c), 1))


def test_contract_path_of_trivalent_vertices():
    c = build(3, [("c1", 1, (), "c"), ("u1", 0, {1}, "u1"), ("u2", 0, {2}, "u2")],
              [("c1", "u1", 3, "u"), ("u1", "u2", 2, "u")],
              [("u2", 1, "u", "a"), ("u2", 1, "u", "b"), ("u1", 1, "u", "x"),
               ("c1", 3, "v", "p"), ("c1", 3, "w", "q")])
    assert cg.validate(c) == []
    merged = cg.contract(c, {"e2"})
    assert cg.validate(merged) == []
    v = merged.vertex("u1")
    assert merged.valence("u1") == 4 and v.labels == {1, 2}
    assert merged.rh_number("u1") == c.rh_number("u1") + c.rh_number("u2")
    assert v.image == LinePosition(Ray.U, 1)


def test_contract_errors():
    c = loop_cover(1, 2, (2, 1), (3,), 0)
    with pytest.raises(ValueError):
        cg.contract(c, {"nope"})
    with pytest.raises(ValueError):
        cg.contract(c, {"e1"})


def _members(c, shrink):
    uf = cg.UnionFind(v.id for v in c.vertices)
    for e in c.edges:
        if e.id in shrink:
            uf.union(*e.endpoints)
    return uf.groups()


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False), st.data())
def test_contraction_validates_and_rh_is_additive(rng, data):
    pool = [c for c in all_battery_covers() if c.edges]
    c = data.draw(st.sampled_from(pool))
    shrink = geometric_shrink(c, rng)
    new = cg.contract(c, shrink)
    assert cg.validate(new) == []
    assert cg.genus(new) == cg.genus(c)
    assert cg.profile(new) == cg.profile(c)
    for members in _members(c, shrink).values():
        nid = min(members)
        assert new.rh_number(nid) == sum(c.rh_number(m) for m in members)


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False), st.data())
def test_contraction_composes(rng, data):
    pool = [c for c in all_battery_covers() if len(c.edges) >= 2]
    c = data.draw(st.sampled_from(pool))
    total = geometric_shrink(c, rng)
    first = set(data.draw(st.sets(st.sampled_from(sorted(total)))) if total else ())
    # close under edges whose ends are already identified, so the first step is a face
    while True:
        members = _members(c, first)
        root = {m: k for k, ms in members.items() for m in ms}
        more = {e.id for e in c.edges if e.id in total and root[e.endpoints[0]] == root[e.endpoints[1]]}
        if more <= first:
            break
        first |= more
    step = cg.contract(c, first)
    rest = {e.id for e in step.edges if e.id in total - first}
    assert cg.canonical_key(cg.contract(step, rest)) == cg.canonical_key(cg.contract(c, total))


def test_full_contraction_of_one_label_resolutions_is_the_star():
    star_key = cg.canonical_key(star_cover(*WORKED))
    for ray in "uvw":
        for c in worked_covers(ray):
            assert cg.canonical_key(cg.contract(c, {e.id for e in c.edges})) == star_key


def test_straighten_removes_two_valent_vertex():
    c = build(2, [("c1", 0, (), "c"), ("u1", 0, (), "u1")], [("c1", "u1", 2, "u")],
              [("u1", 2, "u", "a"), ("c1", 2, "v", "b"), ("c1", 1, "w", "x"), ("c1", 1, "w", "y")])
    s = cg.straighten(c)
    assert [v.id for v in s.vertices] == ["c1"] and not s.edges
    assert cg.validate(s) == []


# -- isomorphism -------------------------------------------------------------


def _nx(c):
    g = nx.MultiGraph()
    for v in c.vertices:
        g.add_node(v.id, kind=("v", v.image, v.genus, tuple(sorted(v.labels))))
    for x in c.ends:
        g.add_node(("end", x.id), kind=("end", x.mark, x.ray, x.weight))
        g.add_edge(x.vertex, ("end", x.id), data=(0, x.ray))
    for e in c.edges:
        g.add_edge(*e.endpoints, data=(e.weight, e.ray))
    return g


def _edge_match(a, b):
    return Counter(x["data"] for x in a.values()) == Counter(x["data"] for x in b.values())


def _isomorphic(a, b):
    return nx.is_isomorphic(_nx(a), _nx(b), node_match=lambda x, y: x["kind"] == y["kind"],
                            edge_match=_edge_match)


def _renamed(c, rng):
    ids = [v.id for v in c.vertices]
    new = [f"n{i}" for i in range(len(ids))]
    rng.shuffle(new)
    m = dict(zip(ids, new))
    vs = [cg.CoverVertex(m[v.id], v.genus, v.labels, v.image) for v in c.vertices]
    es = [cg.CoverEdge(f"x{k}", tuple(m[p] for p in reversed(e.endpoints)), e.weight, e.ray)
          for k, e in enumerate(c.edges)]
    rng.shuffle(vs)
    rng.shuffle(es)
    xs = [cg.CoverEnd(x.id, m[x.vertex], x.weight, x.ray, x.mark) for x in c.ends]
    return CoverType(tuple(vs), tuple(es), tuple(xs), c.degree)


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False), st.data())
def test_canonical_key_invariant_under_renaming(rng, data):
    c = data.draw(st.sampled_from(all_battery_covers()))
    r = _renamed(c, rng)
    assert cg.canonical_key(r) == cg.canonical_key(c)
    assert cg.automorphism_count(r) == cg.automorphism_count(c)


def test_canonical_key_agrees_with_networkx(sample):
    # group covers with equal coarse invariants and compare every pair
    buckets = {}
    for c in sample:
        sig = (c.degree, len(c.vertices), len(c.edges), tuple(sorted(x.mark for x in c.ends)))
        buckets.setdefault(sig, []).append(c)
    pairs = 0
    for group in buckets.values():
        for i, a in enumerate(group):
            for b in group[i:]:
                assert (cg.canonical_key(a) == cg.canonical_key(b)) == _isomorphic(a, b)
                pairs += 1
    assert pairs > 300


def test_mark_swap_changes_key_wiener_swap_does_not():
    joins = [c for c in worked_covers("u") if len(c.edges) == 1 and
             sorted(w for s, w in cg._sides(c, c.ray_vertices()[0]) if s == "out") == [1, 3]]
    assert len(joins) == 2
    assert cg.canonical_key(joins[0]) != cg.canonical_key(joins[1])
    assert _isomorphic(joins[0], joins[0]) and not _isomorphic(*joins)
    w = loop_cover(1, 1, (2,), (2,), 0)
    swapped = CoverType(w.vertices, tuple(reversed(w.edges)), w.ends, w.degree)
    assert cg.canonical_key(w) == cg.canonical_key(swapped)
    assert cg.automorphism_count(w) == 2


def test_automorphisms_beyond_wieners():
    d, prof, g = 2, ((2,), (2,), (2,)), 2
    (c,) = enumerate_covers(d, prof, g, BranchConfiguration((1,), (2,), (3,)))
    assert cg.wiener_count(c) == 0
    assert cg.automorphism_count(c) == 2


# -- serialisation -----------------------------------------------------------


def test_json_round_trip(sample):
    for c in sample[:50]:
        data = cg.to_json(c)
        assert set(data) == {"degree", "vertices", "edges", "ends"}
        back = cg.from_json(json.dumps(data))
        assert cg.canonical_key(back) == cg.canonical_key(c)
        assert cg.to_json(back) == data


def test_dot_export():
    c = single_edge(4)
    text = cg.to_dot(c, "cut")
    assert text.startswith('graph "cut"')
    assert "red" in text and "blue" in text
    assert text.count("--") == len(c.edges) + len(c.ends)


def test_profile_keeps_marks():
    mp = MarkedPartition(((3, "a"), (1, "b"), (1, "c")))
    s = star_cover(5, (mp, (5,), (3, 2)), 1)
    assert cg.profile(s)[0] == mp
    assert s.vertex("c1").image == CENTER
