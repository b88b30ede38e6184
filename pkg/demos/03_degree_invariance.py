"""The branch-map degree does not depend on where the branch points sit."""

from collections import Counter

from trophurwitz.enumeration import all_configurations, enumerate_covers, invariance_check
from trophurwitz.hurwitz_oracle import HurwitzQuery, format_fraction, hurwitz_marked
from trophurwitz.moduli import cell_contribution

d, profile, g, r = 4, ((2, 2), (4,), (4,)), 2, 2

for cfg in all_configurations(r):
    values = Counter(cell_contribution(c) for c in enumerate_covers(d, profile, g, cfg))
    parts = ", ".join(f"{format_fraction(v)}x{n}" for v, n in sorted(values.items()))
    print(f"{str(cfg):<14} {sum(v * n for v, n in values.items())!s:>4}   [{parts}]")

print("monodromy count:", hurwitz_marked(HurwitzQuery(d, profile, r)))

# with three labels two center vertices can be swapped by an automorphism
# that is not a wiener; the contribution then carries 1/|Aut| = 1/2
rep = invariance_check(2, ((2,), (2,), (2,)), 2, all_configurations(3), jobs=2)
print("\nd=2, r=3:", {format_fraction(v) for _, v in rep.degrees}, "over", len(rep.degrees), "configurations")
print("monodromy count:", hurwitz_marked(HurwitzQuery(2, ((2,), (2,), (2,)), 3)))
