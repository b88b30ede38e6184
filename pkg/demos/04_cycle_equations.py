"""Cycle equations of a cover type and the two routes to its multiplicity."""

import math

from trophurwitz import lattice
from trophurwitz.enumeration import BranchConfiguration, enumerate_covers
from trophurwitz.moduli import branch_multiplicity

covers = enumerate_covers(4, ((2, 2), (4,), (4,)), 2, BranchConfiguration(v=(1,), w=(2,)))
# the type whose cycle equations have the largest index
cover = max(covers, key=lambda c: lattice.lattice_index(lattice.cycle_equations(c).matrix))

for e in cover.edges:
    print(e.id, e.endpoints, "weight", e.weight, "on", e.ray.value)

system = lattice.cycle_equations(cover)
print("\ncolumns", system.column_edges)
for row in system.matrix.entries:
    print(" ", row)

index = lattice.lattice_index(system.matrix)
kernel = lattice.kernel_lattice(system.matrix)
print("\nindex", index, " spanning-tree gcd", lattice.spanning_tree_index(cover))
print("kernel basis", kernel)
print("branch multiplicity via the kernel", lattice.branch_multiplicity_lattice(cover))
print("prod w / index", math.prod(e.weight for e in cover.edges), "/", index, "=", branch_multiplicity(cover))

# saturation matters: 2x - 2y = 0 has kernel Z(1,1), not Z(2,2)
print("\nkernel of (2,-2):", lattice.kernel_lattice([[2, -2]]))
