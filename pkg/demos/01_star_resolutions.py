"""Resolving a one-label star cover in three ways.

Degree 5 covers of genus 1 with profile ((3,1,1), (5), (3,2)) have one
simple branch point. Moving it onto each ray of L gives a different set of
trivalent types. Each set sums to the same number, the Hurwitz number.
"""

from trophurwitz import cover_graph as cg
from trophurwitz.enumeration import boundary_datum, resolve_star, star_cover
from trophurwitz.hurwitz_oracle import format_fraction, hurwitz_number
from trophurwitz.moduli import cell_report

d, profile, g = 5, ((3, 1, 1), (5,), (3, 2)), 1

star = star_cover(d, profile, g)
print("star cover:", [(v.id, v.genus, sorted(v.labels)) for v in star.vertices])

table = resolve_star(star)
for ray, rows in table.items():
    print(f"\nlabel on ray {ray.value}")
    for cover, value in rows:
        rep = cell_report(cover)
        b = boundary_datum(cover)
        hv = " * ".join(format_fraction(h) for h in rep.local_hurwitz.values())
        print(f"  {b.case.name:<20} m=({b.m1},{b.m2})  prod_w={rep.edge_product:<2} H={hv:<8}"
              f" |Aut|={rep.automorphisms}  -> {format_fraction(value)}")
    print("  sum", format_fraction(sum(v for _, v in rows)))

print("\nmonodromy count:", hurwitz_number(d, *profile, g=g))

# one of the resolutions in Graphviz form
first = table[next(iter(table))][0][0]
print()
print(cg.to_dot(first, "resolution"))
