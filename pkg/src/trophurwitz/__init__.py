"""Tropical triple Hurwitz numbers on covers of the tropical line.

The algebraic side is a brute-force monodromy count in the symmetric group
(:mod:`~trophurwitz.hurwitz_oracle`). The tropical side enumerates trivalent
cover types over a generic branch configuration and sums their cell
contributions (:mod:`~trophurwitz.enumeration`). Everything is exact.
"""

from .cover_graph import (
    CENTER,
    RAYS,
    CoverEdge,
    CoverEnd,
    CoverType,
    CoverVertex,
    LinePosition,
    Ray,
    canonical_key,
    contract,
    genus,
    profile,
    validate,
)
from .enumeration import (
    BranchConfiguration,
    DegreeReport,
    all_configurations,
    degree_report,
    enumerate_covers,
    invariance_check,
    resolve_star,
    star_cover,
    tropical_degree,
)
from .exceptions import InvariantError
from .hurwitz_oracle import (
    BoundaryCase,
    BoundaryDatum,
    HurwitzQuery,
    boundary_multiplicity,
    hurwitz_marked,
    hurwitz_number,
    hurwitz_unmarked,
    simple_count,
)
from .lattice import IntegerMatrix, cycle_equations, lattice_index, spanning_tree_index
from .moduli import CellReport, cell_contribution, cell_report, cell_weight
from .symmetric_group import MarkedPartition, Partition, Permutation

__version__ = "0.1.0"

__all__ = [
    "CENTER", "RAYS", "BoundaryCase", "BoundaryDatum", "BranchConfiguration", "CellReport",
    "CoverEdge", "CoverEnd", "CoverType", "CoverVertex", "DegreeReport", "HurwitzQuery",
    "IntegerMatrix", "InvariantError", "LinePosition", "MarkedPartition", "Partition",
    "Permutation", "Ray", "all_configurations", "boundary_multiplicity", "canonical_key",
    "cell_contribution", "cell_report", "cell_weight", "contract", "cycle_equations",
    "degree_report", "enumerate_covers", "genus", "hurwitz_marked", "hurwitz_number",
    "hurwitz_unmarked", "invariance_check", "lattice_index", "profile", "resolve_star",
    "simple_count", "spanning_tree_index", "star_cover", "tropical_degree", "validate",
]
