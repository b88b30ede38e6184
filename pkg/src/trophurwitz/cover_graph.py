"""Combinatorial types of tropical covers of the tropical line L.

L has one vertex ``c`` (the center) and three rays ``u``, ``v``, ``w``.
A cover type records the source graph with vertex genera and labels, edge
weights, marked ends, and where each vertex sits on L. Positions on a ray are
ordered slots (1 nearest to the center); metric data is never stored.
"""

from __future__ import annotations

import enum
import itertools
import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from typing import Iterable

from .symmetric_group import MarkedPartition


class Ray(str, enum.Enum):
    U = "u"
    V = "v"
    W = "w"
    CENTER = "c"


RAYS = (Ray.U, Ray.V, Ray.W)


@dataclass(frozen=True, order=True)
class LinePosition:
    ray: Ray
    slot: int = 0

    def __post_init__(self):
        ray = Ray(self.ray)
        object.__setattr__(self, "ray", ray)
        if (self.slot == 0) != (ray is Ray.CENTER):
            raise ValueError(f"slot 0 is reserved for the center, got {ray.value}:{self.slot}")
        if self.slot < 0:
            raise ValueError("slots are non-negative")


CENTER = LinePosition(Ray.CENTER, 0)


@dataclass(frozen=True)
class CoverVertex:
    id: str
    genus: int
    labels: frozenset = frozenset()
    image: LinePosition = CENTER

    def __post_init__(self):
        object.__setattr__(self, "labels", frozenset(int(x) for x in self.labels))

    @property
    def at_center(self) -> bool:
        return self.image.ray is Ray.CENTER


@dataclass(frozen=True)
class CoverEdge:
    id: str
    endpoints: tuple[str, str]
    weight: int
    ray: Ray

    def __post_init__(self):
        object.__setattr__(self, "ray", Ray(self.ray))
        object.__setattr__(self, "endpoints", tuple(self.endpoints))


@dataclass(frozen=True)
class CoverEnd:
    id: str
    vertex: str
    weight: int
    ray: Ray
    mark: str

    def __post_init__(self):
        object.__setattr__(self, "ray", Ray(self.ray))
        object.__setattr__(self, "mark", str(self.mark))


@dataclass(frozen=True)
class CoverType:
    vertices: tuple[CoverVertex, ...]
    edges: tuple[CoverEdge, ...]
    ends: tuple[CoverEnd, ...]
    degree: int
    _vmap: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "ends", tuple(self.ends))
        object.__setattr__(self, "_vmap", {v.id: v for v in self.vertices})

    def vertex(self, vid: str) -> CoverVertex:
        return self._vmap[vid]

    def center_vertices(self) -> list[CoverVertex]:
        return [v for v in self.vertices if v.at_center]

    def ray_vertices(self) -> list[CoverVertex]:
        return [v for v in self.vertices if not v.at_center]

    def incident(self, vid: str) -> list[CoverEdge]:
        return [e for e in self.edges if vid in e.endpoints]

    def ends_at(self, vid: str) -> list[CoverEnd]:
        return [x for x in self.ends if x.vertex == vid]

    def valence(self, vid: str) -> int:
        loops = sum(1 for e in self.edges if e.endpoints[0] == e.endpoints[1] == vid)
        return len(self.incident(vid)) + loops + len(self.ends_at(vid))

    def local_degree(self, vid: str) -> int:
        """Sum of weights on one side of the vertex: toward u at c, outward on a ray."""
        v = self.vertex(vid)
        if v.at_center:
            return sum(w for ray, w in _sides(self, v) if ray is Ray.U)
        return sum(w for side, w in _sides(self, v) if side == "out")

    def rh_number(self, vid: str) -> int:
        """val + 2g - 2 - deg * (val(h(V)) - 2); val(c) = 3, a ray point counts as 2."""
        v = self.vertex(vid)
        r = self.valence(vid) + 2 * v.genus - 2
        if v.at_center:
            r -= self.local_degree(vid)
        return r

    @property
    def label_count(self) -> int:
        return sum(len(v.labels) for v in self.vertices)


def _other(e: CoverEdge, vid: str) -> str:
    a, b = e.endpoints
    return b if a == vid else a


def _sides(c: CoverType, v: CoverVertex):
    """(side, weight) for each edge/end at ``v``.

    At the center the side is the ray the edge maps to. On a ray the side is
    'out' (toward infinity) or 'in' (toward c); a malformed edge yields 'bad'.
    """
    out = []
    for e in c.incident(v.id):
        if v.at_center:
            out.append((e.ray, e.weight))
            continue
        other = c.vertex(_other(e, v.id))
        if other.at_center:
            out.append(("in", e.weight))
        elif other.image.ray is not v.image.ray or other.image.slot == v.image.slot:
            out.append(("bad", e.weight))
        else:
            out.append(("out" if other.image.slot > v.image.slot else "in", e.weight))
    for x in c.ends_at(v.id):
        out.append((x.ray if v.at_center else "out", x.weight))
    return out


class UnionFind:
    """Disjoint sets with path halving."""

    def __init__(self, items: Iterable = ()):
        self.parent = {}
        for x in items:
            self.add(x)

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        self.add(x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True

    def groups(self) -> dict:
        out = defaultdict(list)
        for x in self.parent:
            out[self.find(x)].append(x)
        return dict(out)


# -- validation and basic invariants -----------------------------------------


def validate(c: CoverType) -> list[str]:
    """All violations of the cover conditions; an empty list means valid."""
    bad: list[str] = []
    ids = [v.id for v in c.vertices]
    if len(set(ids)) != len(ids):
        bad.append("duplicate vertex ids")
    eids = [e.id for e in c.edges] + [x.id for x in c.ends]
    if len(set(eids)) != len(eids):
        bad.append("duplicate edge/end ids")
    for e in c.edges:
        if any(p not in c._vmap for p in e.endpoints):
            bad.append(f"edge {e.id} references an unknown vertex")
    for x in c.ends:
        if x.vertex not in c._vmap:
            bad.append(f"end {x.id} references an unknown vertex")
    if bad:
        return bad
    if any(e.weight <= 0 for e in c.edges) or any(x.weight <= 0 for x in c.ends):
        bad.append("weights must be positive")
    marks = [x.mark for x in c.ends]
    if len(set(marks)) != len(marks):
        bad.append("end marks are not distinct")
    for x in c.ends:
        if x.ray is Ray.CENTER:
            bad.append(f"end {x.id} must map to a ray")
    for e in c.edges:
        a, b = (c.vertex(p) for p in e.endpoints)
        if e.ray is Ray.CENTER:
            bad.append(f"edge {e.id} must map to a ray")
        elif a.id == b.id:
            bad.append(f"edge {e.id} is a loop")
        elif a.at_center and b.at_center:
            bad.append(f"edge {e.id} joins two center vertices (weight-0 edge)")
        elif any(not p.at_center and p.image.ray is not e.ray for p in (a, b)):
            bad.append(f"edge {e.id} leaves its ray {e.ray.value}")
        elif not a.at_center and not b.at_center and a.image.slot == b.image.slot:
            bad.append(f"edge {e.id} joins two vertices at the same point")
    for x in c.ends:
        v = c.vertex(x.vertex)
        if not v.at_center and v.image.ray is not x.ray:
            bad.append(f"end {x.id} leaves its ray {x.ray.value}")
    if bad:
        return bad

    # (a) balancing
    for v in c.vertices:
        sums = defaultdict(int)
        for side, w in _sides(c, v):
            sums[side] += w
        keys = RAYS if v.at_center else ("in", "out")
        if len({sums[k] for k in keys}) != 1 or sums[keys[0]] == 0:
            bad.append(f"balancing fails at {v.id}: {dict(sums)}")
        if c.valence(v.id) == 2 and v.genus == 0:
            bad.append(f"vertex {v.id} is two-valent of genus 0")
    if bad:
        return bad

    # (b), (c) RH-numbers and labels
    for v in c.vertices:
        r = c.rh_number(v.id)
        if r < 0:
            bad.append(f"RH-number of {v.id} is {r} < 0")
        elif len(v.labels) != r:
            bad.append(f"{v.id} has {len(v.labels)} labels but RH-number {r}")
    # (d) labels partition {1..r}
    all_labels = [x for v in c.vertices for x in v.labels]
    if len(set(all_labels)) != len(all_labels) or set(all_labels) != set(range(1, len(all_labels) + 1)):
        bad.append(f"labels do not partition 1..{len(all_labels)}: {sorted(all_labels)}")
    # (e) ends per ray
    for ray in RAYS:
        tot = sum(x.weight for x in c.ends if x.ray is ray)
        if tot != c.degree:
            bad.append(f"end weights over {ray.value} sum to {tot}, not {c.degree}")
    # (f) constant degree over every point of L
    bad.extend(_degree_violations(c))
    # (g) connectivity
    if not is_connected(c):
        bad.append("underlying graph is disconnected")
    return bad


def _degree_violations(c: CoverType) -> list[str]:
    bad = []
    centre = sum(c.local_degree(v.id) for v in c.center_vertices())
    if centre != c.degree:
        bad.append(f"local degrees over c sum to {centre}, not {c.degree}")
    inf = float("inf")
    for ray in RAYS:
        spans = []
        for e in c.edges:
            if e.ray is ray:
                s = sorted(c.vertex(p).image.slot for p in e.endpoints)
                spans.append((s[0], s[1], e.weight))
        for x in c.ends:
            if x.ray is ray:
                spans.append((c.vertex(x.vertex).image.slot, inf, x.weight))
        slots = sorted({v.image.slot for v in c.ray_vertices() if v.image.ray is ray})
        points = [0] + slots + [inf]
        for a, b in zip(points, points[1:]):
            tot = sum(w for lo, hi, w in spans if lo <= a and hi >= b)
            if tot != c.degree:
                bad.append(f"degree {tot} over the segment ({a}, {b}) of {ray.value}")
        for s in slots:
            tot = sum(c.local_degree(v.id) for v in c.ray_vertices()
                      if v.image.ray is ray and v.image.slot == s)
            tot += sum(w for lo, hi, w in spans if lo < s < hi)
            if tot != c.degree:
                bad.append(f"degree {tot} over slot {s} of {ray.value}")
    return bad


def is_connected(c: CoverType) -> bool:
    uf = UnionFind(v.id for v in c.vertices)
    for e in c.edges:
        uf.union(*e.endpoints)
    return len(uf.groups()) <= 1


def check(c: CoverType) -> CoverType:
    """Return ``c`` or raise ValueError listing every violation."""
    bad = validate(c)
    if bad:
        raise ValueError("invalid cover: " + "; ".join(bad))
    return c


def degree(c: CoverType) -> int:
    """Sum of local degrees over the center (equal over every point of L)."""
    check(c)
    return sum(c.local_degree(v.id) for v in c.center_vertices())


def betti_number(c: CoverType) -> int:
    uf = UnionFind(v.id for v in c.vertices)
    for e in c.edges:
        uf.union(*e.endpoints)
    return len(c.edges) - len(c.vertices) + len(uf.groups())


def genus(c: CoverType) -> int:
    """b^1 of the graph plus the vertex genera."""
    return betti_number(c) + sum(v.genus for v in c.vertices)


def profile(c: CoverType) -> tuple[MarkedPartition, MarkedPartition, MarkedPartition]:
    return tuple(
        MarkedPartition(tuple((x.weight, x.mark) for x in c.ends if x.ray is ray)) for ray in RAYS
    )


def is_trivalent_type(c: CoverType) -> bool:
    """Center vertices have RH-number 0; every other vertex is trivalent of genus 0."""
    for v in c.vertices:
        if v.at_center:
            if c.rh_number(v.id) != 0:
                return False
        elif c.valence(v.id) != 3 or v.genus != 0:
            return False
    return True


def wiener_count(c: CoverType) -> int:
    """Unordered pairs of parallel bounded edges with equal weight."""
    groups = Counter((frozenset(e.endpoints), e.weight, e.ray) for e in c.edges)
    return sum(n * (n - 1) // 2 for n in groups.values())


# -- contraction -------------------------------------------------------------


def contract(c: CoverType, shrink: Iterable[str]) -> CoverType:
    """Shrink the given bounded edges to length zero.

    Every connected shrunk subgraph becomes one vertex whose genus is the sum
    of the genera plus the subgraph's first Betti number and whose labels are
    the union of the labels. It lands on c if it touches c, otherwise at the
    innermost slot it occupied. Ends keep their marks.
    """
    shrink = set(shrink)
    known = {e.id for e in c.edges}
    unknown = shrink - known
    if unknown:
        raise ValueError(f"unknown edge ids: {sorted(unknown)}")
    if not shrink:
        return c
    uf = UnionFind(v.id for v in c.vertices)
    for e in c.edges:
        if e.id in shrink:
            uf.union(*e.endpoints)
    groups = uf.groups()
    inner = Counter(uf.find(e.endpoints[0]) for e in c.edges if e.id in shrink)
    rename = {}
    new_vertices = []
    for root, members in groups.items():
        vs = [c.vertex(m) for m in members]
        if len(vs) == 1 and inner[root] == 0:
            continue
        b1 = inner[root] - len(vs) + 1
        if any(v.at_center for v in vs):
            image = CENTER
        else:
            rays = {v.image.ray for v in vs}
            if len(rays) != 1:
                raise ValueError(f"shrunk component {sorted(members)} spans several rays")
            image = LinePosition(rays.pop(), min(v.image.slot for v in vs))
        new_id = min(members)
        for m in members:
            rename[m] = new_id
        new_vertices.append(
            (new_id, CoverVertex(new_id, sum(v.genus for v in vs) + b1,
                                 frozenset().union(*(v.labels for v in vs)), image))
        )
    merged = dict(new_vertices)
    vertices, placed = [], set()
    for v in c.vertices:
        nid = rename.get(v.id, v.id)
        if nid not in merged:
            vertices.append(v)
        elif nid not in placed:
            placed.add(nid)
            vertices.append(merged[nid])
    edges = []
    for e in c.edges:
        if e.id in shrink:
            continue
        a, b = (rename.get(p, p) for p in e.endpoints)
        if a == b:
            raise ValueError(f"edge {e.id} would become a loop; shrink set is not a face")
        edges.append(replace(e, endpoints=(a, b)))
    ends = [replace(x, vertex=rename.get(x.vertex, x.vertex)) for x in c.ends]
    return straighten(CoverType(tuple(vertices), tuple(edges), tuple(ends), c.degree))


def straighten(c: CoverType) -> CoverType:
    """Remove two-valent unlabeled genus-0 vertices off the center."""
    while True:
        for v in c.vertices:
            if v.at_center or v.genus or v.labels or c.valence(v.id) != 2:
                continue
            es, xs = c.incident(v.id), c.ends_at(v.id)
            if len(es) == 2 and es[0].weight == es[1].weight:
                e0, e1 = es
                a, b = _other(e0, v.id), _other(e1, v.id)
                if a == b:
                    continue
                edges = [x for x in c.edges if x.id not in (e0.id, e1.id)]
                edges.append(replace(e0, endpoints=(a, b)))
                ends = list(c.ends)
            elif len(es) == 1 and len(xs) == 1 and es[0].weight == xs[0].weight:
                a = _other(es[0], v.id)
                edges = [x for x in c.edges if x.id != es[0].id]
                ends = [replace(x, vertex=a) if x.id == xs[0].id else x for x in c.ends]
            else:
                continue
            c = CoverType(tuple(x for x in c.vertices if x.id != v.id), tuple(edges), tuple(ends), c.degree)
            break
        else:
            return c


# -- isomorphism -------------------------------------------------------------


def _base_color(c: CoverType, v: CoverVertex):
    ends = tuple(sorted((x.weight, x.ray.value, x.mark) for x in c.ends_at(v.id)))
    return (v.image.ray.value, v.image.slot, v.genus, tuple(sorted(v.labels)), ends)


def _refined_classes(c: CoverType):
    base = {v.id: _base_color(c, v) for v in c.vertices}
    order = sorted(set(base.values()))
    rank = {vid: order.index(col) for vid, col in base.items()}
    nbrs = defaultdict(list)
    for e in c.edges:
        a, b = e.endpoints
        nbrs[a].append((e.weight, e.ray.value, b))
        nbrs[b].append((e.weight, e.ray.value, a))
    n_classes = len(order)
    while True:
        sig = {vid: (rank[vid], tuple(sorted((w, r, rank[o]) for w, r, o in nbrs[vid]))) for vid in rank}
        order = sorted(set(sig.values()))
        rank = {vid: order.index(s) for vid, s in sig.items()}
        if len(order) == n_classes:
            break
        n_classes = len(order)
    classes = defaultdict(list)
    for vid, k in rank.items():
        classes[k].append(vid)
    return base, [sorted(classes[k]) for k in sorted(classes)]


def _orderings(classes):
    for combo in itertools.product(*(itertools.permutations(cl) for cl in classes)):
        yield [vid for part in combo for vid in part]


def _edge_form(c: CoverType, order: list[str]):
    pos = {vid: i for i, vid in enumerate(order)}
    return tuple(sorted(
        (min(pos[a], pos[b]), max(pos[a], pos[b]), e.weight, e.ray.value)
        for e in c.edges for a, b in [e.endpoints]
    ))


def _canonical_form(c: CoverType):
    base, classes = _refined_classes(c)
    best, ties = None, 0
    colors = None
    for order in _orderings(classes):
        form = _edge_form(c, order)
        if best is None or form < best:
            best, ties = form, 1
            colors = tuple(base[vid] for vid in order)
        elif form == best:
            ties += 1
    return (c.degree, colors, best), ties


def canonical_key(c: CoverType) -> bytes:
    """Byte string equal for two covers iff they are isomorphic.

    Isomorphisms preserve vertex genus and labels, end marks, edge weights
    and images in L. Vertices are split into colour classes by iterated
    neighbourhood refinement, then the lexicographically least edge list over
    all class-respecting orderings is taken.
    """
    form, _ = _canonical_form(c)
    return repr(form).encode()


def automorphism_count(c: CoverType) -> int:
    """|Aut| of the cover: vertex symmetries times swaps of identical parallel edges."""
    _, ties = _canonical_form(c)
    groups = Counter((frozenset(e.endpoints), e.weight, e.ray) for e in c.edges)
    parallel = 1
    for n in groups.values():
        for k in range(2, n + 1):
            parallel *= k
    return ties * parallel


# -- serialisation -----------------------------------------------------------


def to_json(c: CoverType) -> dict:
    return {
        "degree": c.degree,
        "vertices": [
            {"id": v.id, "genus": v.genus, "labels": sorted(v.labels),
             "image": {"ray": v.image.ray.value, "slot": v.image.slot}}
            for v in c.vertices
        ],
        "edges": [
            {"id": e.id, "endpoints": list(e.endpoints), "weight": e.weight, "ray": e.ray.value}
            for e in c.edges
        ],
        "ends": [
            {"id": x.id, "vertex": x.vertex, "weight": x.weight, "ray": x.ray.value, "mark": x.mark}
            for x in c.ends
        ],
    }


def from_json(data: dict | str) -> CoverType:
    if isinstance(data, str):
        data = json.loads(data)
    vertices = tuple(
        CoverVertex(str(v["id"]), int(v["genus"]), frozenset(v.get("labels", ())),
                    LinePosition(Ray(v["image"]["ray"]), int(v["image"].get("slot", 0))))
        for v in data["vertices"]
    )
    edges = tuple(
        CoverEdge(str(e["id"]), tuple(str(p) for p in e["endpoints"]), int(e["weight"]), Ray(e["ray"]))
        for e in data["edges"]
    )
    ends = tuple(
        CoverEnd(str(x["id"]), str(x["vertex"]), int(x["weight"]), Ray(x["ray"]), str(x["mark"]))
        for x in data["ends"]
    )
    return CoverType(vertices, edges, ends, int(data["degree"]))


def to_dot(c: CoverType, name: str = "cover") -> str:
    """Graphviz source: genus in red next to vertices, weights in blue on edges."""
    lines = [f"graph {json.dumps(name)} {{", "  node [shape=circle, width=0.3, label=\"\"];"]
    for v in c.vertices:
        where = "c" if v.at_center else f"{v.image.ray.value}{v.image.slot}"
        labels = ",".join(map(str, sorted(v.labels)))
        text = f"{v.id}@{where}" + (f" [{labels}]" if labels else "")
        genus = f'<br/><font color="red">{v.genus}</font>' if v.genus else ""
        lines.append(f"  {json.dumps(v.id)} [xlabel=<{text}{genus}>];")
    for e in c.edges:
        a, b = e.endpoints
        lines.append(f"  {json.dumps(a)} -- {json.dumps(b)} [label=\"{e.weight}\", fontcolor=blue];")
    for x in c.ends:
        leaf = f"end:{x.id}"
        lines.append(f"  {json.dumps(leaf)} [shape=plaintext, label={json.dumps(x.mark + '@' + x.ray.value)}];")
        lines.append(f"  {json.dumps(x.vertex)} -- {json.dumps(leaf)} [label=\"{x.weight}\", fontcolor=blue];")
    lines.append("}")
    return "\n".join(lines) + "\n"
