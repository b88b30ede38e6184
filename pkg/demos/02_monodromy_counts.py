"""Triple Hurwitz numbers by counting permutation tuples."""

import itertools
import time

from trophurwitz.hurwitz_oracle import (
    HurwitzQuery,
    hurwitz_marked,
    hurwitz_unmarked,
    hurwitz_unmarked_naive,
)
from trophurwitz.symmetric_group import Permutation, compose, conjugacy_class, cycle_type, partitions

# a 3-cycle squared is the other 3-cycle
c = Permutation.from_cycles(3, (1, 2, 3))
print(c, "*", c, "=", compose(c, c))
print("class (3,1,1) in S_5 has", sum(1 for _ in conjugacy_class(5, (3, 1, 1))), "elements")
print("cycle type of (1 2)(3 4 5):", cycle_type(Permutation.from_cycles(5, (1, 2), (3, 4, 5))))

# marked and unmarked numbers differ by |Aut| of the three partitions
for prof in [((3,), (3,), (3,)), ((1, 1), (2,), (2,)), ((3, 1, 1), (5,), (2, 2, 1))]:
    q = HurwitzQuery(sum(prof[0]), prof, 0)
    print(f"{str(prof):<28} g={q.genus}  unmarked {hurwitz_unmarked(q)}  marked {hurwitz_marked(q)}")

# genus 0 numbers in degree 4 with one simple branch point
print("\nd=4, r=1:")
for prof in itertools.combinations_with_replacement(list(partitions(4)), 3):
    q = HurwitzQuery(4, prof, 1)
    if q.has_valid_genus and q.genus == 0:
        print(f"  {str(prof):<32} {hurwitz_marked(q)}")

# the class-iteration count against the plain all-tuples count
q = HurwitzQuery(4, ((2, 2), (4,), (4,)), 2)
t = time.perf_counter()
a = hurwitz_unmarked(q, use_memo=False)
t1 = time.perf_counter() - t
t = time.perf_counter()
b = hurwitz_unmarked_naive(q)
t2 = time.perf_counter() - t
print(f"\n{q.profile}, r=2: class iteration {a} ({t1:.3f}s), all tuples {b} ({t2:.3f}s)")
