"""Weights, multiplicities and degree contributions of top-dimensional cells."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction

from . import cover_graph as cg
from . import lattice
from .cover_graph import RAYS, CoverType
from .exceptions import InvariantError
from .hurwitz_oracle import HurwitzQuery, format_fraction, hurwitz_marked


def _require_trivalent(c: CoverType) -> None:
    if not cg.is_trivalent_type(c):
        raise ValueError("cell quantities are defined for trivalent types only")


def cell_dimension(c: CoverType) -> int:
    """Number of vertices off the center, cross-checked two other ways."""
    _require_trivalent(c)
    moving = len(c.ray_vertices())
    prof = cg.profile(c)
    closed = sum(len(p) for p in prof) + 2 * cg.genus(c) - 2 - c.degree
    system = lattice.cycle_equations(c)
    kernel_rank = system.matrix.cols - lattice.rank([list(r) for r in system.matrix.entries])
    if not moving == closed == kernel_rank:
        raise InvariantError(f"cell dimension disagrees: vertices {moving}, formula {closed}, kernel {kernel_rank}")
    return moving


def local_profile(c: CoverType, vid: str) -> tuple[tuple[int, ...], ...]:
    """Weights of the edges and ends at a center vertex, grouped by ray."""
    v = c.vertex(vid)
    groups = {ray: [] for ray in RAYS}
    for side, w in cg._sides(c, v):
        groups[side].append(w)
    return tuple(tuple(sorted(groups[ray], reverse=True)) for ray in RAYS)


def local_hurwitz_numbers(c: CoverType) -> dict[str, Fraction]:
    """H_V = H^{g_V}_{d'}(local profile) for every vertex over the center."""
    _require_trivalent(c)
    out = {}
    for v in c.center_vertices():
        prof = local_profile(c, v.id)
        d_local = sum(prof[0])
        if sum(len(p) for p in prof) + 2 * v.genus - 2 - d_local != 0:
            raise InvariantError(f"local Riemann-Hurwitz fails at {v.id}")
        out[v.id] = hurwitz_marked(HurwitzQuery(d_local, prof, 0))
    return out


def bounded_weight_product(c: CoverType) -> int:
    return math.prod(e.weight for e in c.edges)


def cell_weight(c: CoverType) -> Fraction:
    """I * prod H_V / |Aut|.

    |Aut| is computed by exhaustive search. For the types where every
    automorphism comes from a wiener it equals 2^k.
    """
    _require_trivalent(c)
    index = lattice.lattice_index(lattice.cycle_equations(c).matrix)
    hv = math.prod(local_hurwitz_numbers(c).values(), start=Fraction(1))
    return index * hv / cg.automorphism_count(c)


def branch_multiplicity(c: CoverType) -> Fraction:
    """prod of bounded weights over the lattice index; checked against the lattice route."""
    _require_trivalent(c)
    index = lattice.lattice_index(lattice.cycle_equations(c).matrix)
    value = Fraction(bounded_weight_product(c), index)
    independent = lattice.branch_multiplicity_lattice(c)
    if value != independent:
        raise InvariantError(f"branch multiplicity {value} != lattice value {independent}")
    return value


def cell_contribution(c: CoverType) -> Fraction:
    """prod w_e * prod H_V / |Aut|, checked against weight * multiplicity."""
    _require_trivalent(c)
    hv = math.prod(local_hurwitz_numbers(c).values(), start=Fraction(1))
    direct = bounded_weight_product(c) * hv / cg.automorphism_count(c)
    via_cell = cell_weight(c) * branch_multiplicity(c)
    if direct != via_cell:
        raise InvariantError(f"contribution {direct} != weight * multiplicity {via_cell}")
    return direct


@dataclass(frozen=True)
class CellReport:
    cover: CoverType
    key: bytes
    dimension: int
    index: int
    wieners: int
    automorphisms: int
    local_hurwitz: dict
    edge_product: int
    weight: Fraction
    multiplicity: Fraction
    contribution: Fraction
    equations: tuple = ()

    def to_json(self, *, with_equations: bool = False) -> dict:
        out = {
            "key": short_key(self.key),
            "dimension": self.dimension,
            "index": self.index,
            "wieners": self.wieners,
            "automorphisms": self.automorphisms,
            "local_hurwitz": {k: format_fraction(v) for k, v in sorted(self.local_hurwitz.items())},
            "edge_product": self.edge_product,
            "weight": format_fraction(self.weight),
            "multiplicity": format_fraction(self.multiplicity),
            "contribution": format_fraction(self.contribution),
            "cover": cg.to_json(self.cover),
        }
        if with_equations:
            out["equations"] = [list(r) for r in self.equations]
        return out


def short_key(key: bytes) -> str:
    return hashlib.sha1(key).hexdigest()[:12]


def cell_report(c: CoverType) -> CellReport:
    _require_trivalent(c)
    system = lattice.cycle_equations(c)
    hv = local_hurwitz_numbers(c)
    report = CellReport(
        cover=c,
        key=cg.canonical_key(c),
        dimension=cell_dimension(c),
        index=lattice.lattice_index(system.matrix),
        wieners=cg.wiener_count(c),
        automorphisms=cg.automorphism_count(c),
        local_hurwitz=hv,
        edge_product=bounded_weight_product(c),
        weight=cell_weight(c),
        multiplicity=branch_multiplicity(c),
        contribution=cell_contribution(c),
        equations=system.matrix.entries,
    )
    return report
