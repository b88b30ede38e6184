"""Trivalent cover types over a generic branch configuration and the branch-map degree.

Fix where the r simple branch points sit on L: for each ray an ordered list
of labels, nearest to the center first. The trivalent types over such a
configuration are generated ray by ray. Start at infinity with the ends of
that ray as strands and walk toward c. At every branch point one trivalent
vertex either joins two strands or cuts one strand in two. At the center the
arriving strands are grouped into center vertices, balanced over the three
rays and with RH-number 0. Summing the cell contributions of the result
gives the tropical Hurwitz number.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import cover_graph as cg
from .cover_graph import (
    CENTER,
    RAYS,
    CoverEdge,
    CoverEnd,
    CoverType,
    CoverVertex,
    LinePosition,
    Ray,
    UnionFind,
)
from .exceptions import InvariantError
from .hurwitz_oracle import (
    BoundaryCase,
    BoundaryDatum,
    HurwitzQuery,
    boundary_multiplicity,
    format_fraction,
    hurwitz_marked,
    simple_count,
)
from .moduli import CellReport, cell_contribution, cell_report, local_profile
from .symmetric_group import MarkedPartition

Profile = tuple[MarkedPartition, MarkedPartition, MarkedPartition]


def marked_profile(profile) -> Profile:
    """Accept marked partitions or plain ones; plain parts are marked u1, u2, ... ."""
    if len(profile) != 3:
        raise ValueError("a profile is a triple of partitions")
    out = []
    for ray, p in zip(RAYS, profile):
        if isinstance(p, MarkedPartition):
            out.append(p)
        else:
            sizes = (p,) if isinstance(p, int) else tuple(p)
            out.append(MarkedPartition.auto(sizes, prefix=ray.value))
    marks = [m for p in out for m in p.marks]
    if len(set(marks)) != len(marks):
        raise ValueError(f"end marks must be distinct across rays: {marks}")
    totals = {p.total for p in out}
    if len(totals) != 1:
        raise ValueError(f"partitions have different totals {sorted(totals)}")
    return tuple(out)


# -- configurations ----------------------------------------------------------


@dataclass(frozen=True)
class BranchConfiguration:
    """Order of the branch-point labels along each ray, nearest to c first."""

    u: tuple[int, ...] = ()
    v: tuple[int, ...] = ()
    w: tuple[int, ...] = ()

    def __post_init__(self):
        for name in "uvw":
            object.__setattr__(self, name, tuple(int(x) for x in getattr(self, name)))
        labels = self.u + self.v + self.w
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise ValueError(f"labels must be exactly 1..r, got {labels}")

    @property
    def r(self) -> int:
        return len(self.u) + len(self.v) + len(self.w)

    def on(self, ray: Ray) -> tuple[int, ...]:
        return getattr(self, ray.value)

    @property
    def shape(self) -> tuple[int, int, int]:
        return (len(self.u), len(self.v), len(self.w))

    @classmethod
    def parse(cls, text: str) -> "BranchConfiguration":
        """Parse ``u:1;v:;w:2,3``; a label 'at the center' (c:...) is rejected."""
        parts = {"u": (), "v": (), "w": ()}
        for chunk in filter(None, (c.strip() for c in text.split(";"))):
            name, _, body = chunk.partition(":")
            name = name.strip().lower()
            if name == "c":
                raise ValueError("branch points at the center are not in general position")
            if name not in parts:
                raise ValueError(f"unknown ray {name!r}")
            parts[name] = tuple(int(x) for x in body.split(",") if x.strip())
        return cls(**parts)

    def __str__(self):
        return ";".join(f"{n}:{','.join(map(str, getattr(self, n)))}" for n in "uvw")

    def to_json(self) -> dict:
        return {n: list(getattr(self, n)) for n in "uvw"}


def all_configurations(r: int) -> list[BranchConfiguration]:
    """Every distribution of the labels 1..r over the rays, in every order."""
    out = []
    for assign in itertools.product(range(3), repeat=r):
        groups = [[lab for lab, a in zip(range(1, r + 1), assign) if a == k] for k in range(3)]
        for orders in itertools.product(*(itertools.permutations(g) for g in groups)):
            out.append(BranchConfiguration(*orders))
    return out


def single_ray_configurations(r: int) -> list[BranchConfiguration]:
    """All labels on one ray in increasing order, for each ray."""
    labels = tuple(range(1, r + 1))
    return [BranchConfiguration(labels, (), ()), BranchConfiguration((), labels, ()),
            BranchConfiguration((), (), labels)]


# -- the star cover ----------------------------------------------------------


def star_cover(d: int, profile, g: int) -> CoverType:
    """One vertex of genus g over c carrying all r labels, with the ends of the profile."""
    prof = marked_profile(profile)
    if prof[0].total != d:
        raise ValueError(f"profile does not total d={d}")
    r = simple_count(d, [p.sizes for p in prof], g)
    if r < 0:
        raise ValueError(f"no cover: Riemann-Hurwitz gives r = {r} < 0")
    centre = CoverVertex("c1", g, frozenset(range(1, r + 1)), CENTER)
    ends = [CoverEnd(mark, "c1", size, ray, mark) for ray, p in zip(RAYS, prof) for size, mark in p.parts]
    return cg.check(CoverType((centre,), (), tuple(ends), d))


# -- sweep along one ray -----------------------------------------------------


@dataclass
class SweepState:
    """Strands crossing the current point of a ray, plus what has been built.

    A strand is (weight, source) where source is ('end', id) or ('vertex', id).
    """

    ray: Ray
    strands: list
    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    end_at: dict = field(default_factory=dict)
    history: list = field(default_factory=list)

    def attach(self, strand, target: str, edge_ids) -> None:
        weight, (kind, ident) = strand
        if kind == "end":
            self.end_at[ident] = target
        else:
            self.edges.append(CoverEdge(next(edge_ids), (target, ident), weight, self.ray))

    def copy(self) -> "SweepState":
        return SweepState(self.ray, list(self.strands), list(self.vertices), list(self.edges),
                          dict(self.end_at), list(self.history))


def _sweep(ray: Ray, part: MarkedPartition, labels: Sequence[int]) -> list[SweepState]:
    """All event sequences on one ray, from the outermost branch point inward."""
    start = SweepState(ray, [(size, ("end", mark)) for size, mark in part.parts])
    states = [start]
    for slot in range(len(labels), 0, -1):
        vid = f"{ray.value}{slot}"
        vertex = CoverVertex(vid, 0, frozenset({labels[slot - 1]}), LinePosition(ray, slot))
        nxt = []
        for st in states:
            n = len(st.strands)
            for i, j in itertools.combinations(range(n), 2):
                new = st.copy()
                a, b = st.strands[i], st.strands[j]
                ids = _edge_ids(new, vid)
                new.attach(a, vid, ids)
                new.attach(b, vid, ids)
                new.strands = [s for k, s in enumerate(st.strands) if k not in (i, j)]
                new.strands.append((a[0] + b[0], ("vertex", vid)))
                new.vertices.append(vertex)
                new.history.append(("join", slot, a[0], b[0]))
                nxt.append(new)
            for i in range(n):
                s = st.strands[i]
                for a1 in range(1, s[0] // 2 + 1):
                    new = st.copy()
                    new.attach(s, vid, _edge_ids(new, vid))
                    new.strands = [t for k, t in enumerate(st.strands) if k != i]
                    new.strands += [(a1, ("vertex", vid)), (s[0] - a1, ("vertex", vid))]
                    new.vertices.append(vertex)
                    new.history.append(("cut", slot, a1, s[0] - a1))
                    nxt.append(new)
        states = nxt
    return states


def _edge_ids(st: SweepState, vid: str):
    return (f"{vid}.{k}" for k in itertools.count(len([e for e in st.edges if e.endpoints[0] == vid])))


# -- grouping at the center --------------------------------------------------


def _center_groupings(strands: list, hv_ok) -> Iterable[list]:
    """Partitions of the arriving strands into balanced center vertices.

    ``strands`` holds (ray, weight, source). Each group needs at least one
    strand per ray with equal weight sums; ``hv_ok(group)`` prunes groups
    with no admissible genus or vanishing local Hurwitz number.
    """
    by_ray = {ray: [s for s in strands if s[0] is ray] for ray in RAYS}

    def subsets_with_sum(pool, total):
        for k in range(1, len(pool) + 1):
            for combo in itertools.combinations(range(len(pool)), k):
                if sum(pool[i][1] for i in combo) == total:
                    yield combo

    def rec(us, vs, ws):
        if not us:
            if not vs and not ws:
                yield []
            return
        for cu in _anchor_subsets(us):
            total = sum(us[i][1] for i in cu)
            for cv in subsets_with_sum(vs, total):
                for cw in subsets_with_sum(ws, total):
                    group = [us[i] for i in cu] + [vs[i] for i in cv] + [ws[i] for i in cw]
                    if not hv_ok(group):
                        continue
                    rest_u = [s for i, s in enumerate(us) if i not in cu]
                    rest_v = [s for i, s in enumerate(vs) if i not in cv]
                    rest_w = [s for i, s in enumerate(ws) if i not in cw]
                    for tail in rec(rest_u, rest_v, rest_w):
                        yield [group] + tail

    yield from rec(by_ray[Ray.U], by_ray[Ray.V], by_ray[Ray.W])


def _anchor_subsets(pool):
    """Subsets of ``pool`` containing its first element."""
    for k in range(0, len(pool)):
        for combo in itertools.combinations(range(1, len(pool)), k):
            yield (0,) + combo


def _group_genus(group) -> int | None:
    d_local = sum(w for ray, w, _ in group if ray is Ray.U)
    twice = d_local + 2 - len(group)
    if twice < 0 or twice % 2:
        return None
    return twice // 2


def _group_profile(group):
    return tuple(tuple(sorted((w for ray, w, _ in group if ray is x), reverse=True)) for x in RAYS)


def _group_ok(group) -> bool:
    g_v = _group_genus(group)
    if g_v is None:
        return False
    prof = _group_profile(group)
    return hurwitz_marked(HurwitzQuery(sum(prof[0]), prof, 0)) != 0


# -- enumeration -------------------------------------------------------------


def enumerate_covers(d: int, profile, g: int, cfg: BranchConfiguration) -> list[CoverType]:
    """Every trivalent marked cover type realising ``cfg``, one per isomorphism class.

    Sorted by canonical key.
    """
    prof = marked_profile(profile)
    if prof[0].total != d:
        raise ValueError(f"profile does not total d={d}")
    r = simple_count(d, [p.sizes for p in prof], g)
    if r < 0:
        raise ValueError(f"no cover: Riemann-Hurwitz gives r = {r} < 0")
    if cfg.r != r:
        raise ValueError(f"configuration has {cfg.r} labels but r = {r}")
    per_ray = [_sweep(ray, part, cfg.on(ray)) for ray, part in zip(RAYS, prof)]
    mark_weight = {mark: size for p in prof for size, mark in p.parts}
    mark_ray = {mark: ray for ray, p in zip(RAYS, prof) for _, mark in p.parts}
    found: dict[bytes, CoverType] = {}
    for states in itertools.product(*per_ray):
        arriving = [(st.ray, w, src) for st in states for w, src in st.strands]
        for grouping in _center_groupings(arriving, _group_ok):
            cover = _assemble(d, states, grouping, mark_weight, mark_ray)
            if cover is None or cg.genus(cover) != g:
                continue
            key = cg.canonical_key(cover)
            found.setdefault(key, cover)
    return [found[k] for k in sorted(found)]


def _assemble(d, states, grouping, mark_weight, mark_ray) -> CoverType | None:
    vertices, edges, end_at = [], [], {}
    for st in states:
        vertices.extend(st.vertices)
        edges.extend(st.edges)
        end_at.update(st.end_at)
    for k, group in enumerate(grouping, start=1):
        cid = f"c{k}"
        vertices.append(CoverVertex(cid, _group_genus(group), frozenset(), CENTER))
        for n, (ray, w, (kind, ident)) in enumerate(group):
            if kind == "end":
                end_at[ident] = cid
            else:
                edges.append(CoverEdge(f"{cid}.{n}", (cid, ident), w, ray))
    uf = UnionFind(v.id for v in vertices)
    for e in edges:
        uf.union(*e.endpoints)
    if len(uf.groups()) != 1:
        return None
    ends = tuple(CoverEnd(m, end_at[m], mark_weight[m], mark_ray[m], m) for m in sorted(end_at))
    return CoverType(tuple(vertices), tuple(edges), ends, d)


# -- degree ------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeReport:
    d: int
    profile: Profile
    g: int
    config: BranchConfiguration
    cells: tuple[CellReport, ...]
    degree: Fraction

    def to_json(self, *, with_equations: bool = False) -> dict:
        return {
            "query": {"d": self.d, "g": self.g, "r": self.config.r,
                      "profile": {ray.value: p.to_json() for ray, p in zip(RAYS, self.profile)}},
            "config": self.config.to_json(),
            "degree": format_fraction(self.degree),
            "cells": [c.to_json(with_equations=with_equations) for c in self.cells],
        }

    def csv_rows(self) -> list[list[str]]:
        from .moduli import short_key

        rows = [["cover_key", "k", "I", "prod_w", "prod_H", "contribution"]]
        for c in self.cells:
            hv = math.prod(c.local_hurwitz.values(), start=Fraction(1))
            rows.append([short_key(c.key), str(c.wieners), str(c.index), str(c.edge_product),
                         format_fraction(hv), format_fraction(c.contribution)])
        return rows


def degree_report(d: int, profile, g: int, cfg: BranchConfiguration) -> DegreeReport:
    prof = marked_profile(profile)
    cells = tuple(cell_report(c) for c in enumerate_covers(d, prof, g, cfg))
    total = sum((c.contribution for c in cells), Fraction(0))
    return DegreeReport(d, prof, g, cfg, cells, total)


def tropical_degree(d: int, profile, g: int, cfg: BranchConfiguration) -> Fraction:
    """Degree of the tropical branch map at the point given by ``cfg``."""
    return sum((cell_contribution(c) for c in enumerate_covers(d, profile, g, cfg)), Fraction(0))


@dataclass(frozen=True)
class InvarianceReport:
    degrees: tuple[tuple[BranchConfiguration, Fraction], ...]
    all_equal: bool
    swap_consistent: bool

    @property
    def degree(self) -> Fraction | None:
        return self.degrees[0][1] if self.all_equal and self.degrees else None


def _contributions(args):
    d, prof, g, cfg = args
    return sorted(cell_contribution(c) for c in enumerate_covers(d, prof, g, cfg))


def invariance_check(d: int, profile, g: int, cfgs: Sequence[BranchConfiguration], *,
                     jobs: int = 1) -> InvarianceReport:
    """Degrees at several configurations.

    Configurations with the same number of labels on each ray differ by a
    relabelling (in particular by swapping labels along a ray), so their
    multisets of contributions must coincide as well.
    """
    prof = marked_profile(profile)
    tasks = [(d, prof, g, cfg) for cfg in cfgs]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            contribs = list(pool.map(_contributions, tasks))
    else:
        contribs = [_contributions(t) for t in tasks]
    degrees = tuple((cfg, sum(cs, Fraction(0))) for cfg, cs in zip(cfgs, contribs))
    by_shape: dict = {}
    swap_ok = True
    for cfg, cs in zip(cfgs, contribs):
        seen = by_shape.setdefault(cfg.shape, cs)
        swap_ok &= Counter(seen) == Counter(cs)
    equal = len({deg for _, deg in degrees}) <= 1
    return InvarianceReport(degrees, equal, swap_ok)


# -- the one-dimensional case ------------------------------------------------


def boundary_datum(c: CoverType) -> BoundaryDatum:
    """The degeneration dual to a one-label trivalent cover."""
    (x,) = c.ray_vertices()
    sides = cg._sides(c, x)
    outs = [w for side, w in sides if side == "out"]
    ins = [e for e in c.incident(x.id)]
    ins = [e for e in ins if c.vertex(cg._other(e, x.id)).at_center]

    def query(vid):
        prof = local_profile(c, vid)
        return HurwitzQuery(sum(prof[0]), prof, 0)

    if len(outs) == 2 and len(ins) == 1:
        return BoundaryDatum(BoundaryCase.JOIN, outs[0], outs[1], (query(cg._other(ins[0], x.id)),))
    if len(outs) == 1 and len(ins) == 2:
        m1, m2 = ins[0].weight, ins[1].weight
        a, b = (cg._other(e, x.id) for e in ins)
        if a == b:
            return BoundaryDatum(BoundaryCase.CUT_SAME_COMPONENT, m1, m2, (query(a),))
        return BoundaryDatum(BoundaryCase.CUT_TWO_COMPONENTS, m1, m2, (query(a), query(b)))
    raise InvariantError(f"ray vertex {x.id} is not a join or a cut")


def resolve_star(s: CoverType) -> dict[Ray, list[tuple[CoverType, Fraction]]]:
    """Resolutions of a one-label star cover, grouped by the ray of the label.

    Each contribution is recomputed as a boundary multiplicity of the dual
    degeneration, and the three ray sums are checked to agree.
    """
    centres = s.center_vertices()
    if len(s.vertices) != 1 or len(centres) != 1 or len(centres[0].labels) != 1:
        raise ValueError("resolve_star needs a star cover with exactly one label")
    prof = cg.profile(s)
    g = centres[0].genus
    out = {}
    for ray in RAYS:
        cfg = BranchConfiguration(**{ray.value: (1,)})
        rows = []
        for cover in enumerate_covers(s.degree, prof, g, cfg):
            value = cell_contribution(cover)
            dual = boundary_multiplicity(boundary_datum(cover))
            if dual != value:
                raise InvariantError(f"tropical multiplicity {value} != boundary multiplicity {dual}")
            rows.append((cover, value))
        out[ray] = rows
    sums = {ray: sum((v for _, v in rows), Fraction(0)) for ray, rows in out.items()}
    if len(set(sums.values())) != 1:
        raise InvariantError(f"ray sums differ: {sums}")
    return out
