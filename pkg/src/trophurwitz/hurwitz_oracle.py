"""Algebraic triple Hurwitz numbers by brute-force monodromy enumeration.

A cover of P^1 with profiles over 0, 1, infinity and r further simple branch
points corresponds to a tuple (s_u, s_v, s_w, t_1, ..., t_r) in S_d with the
s_x in prescribed classes, t_i transpositions,

    t_r ... t_1 s_u s_v s_w = id,

and the generated group transitive. The unmarked number is the tuple count
divided by d!; marking the preimages of 0, 1, infinity multiplies by
|Aut(D_u)| |Aut(D_v)| |Aut(D_w)|.
"""

from __future__ import annotations

import enum
import itertools
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .symmetric_group import (
    Partition,
    _class0,
    _compose,
    _cycle_type,
    _is_transitive,
    _transpositions0,
    as_partition,
    class_size,
    partition_aut,
)


def simple_count(d: int, profile: Sequence[Sequence[int]], g: int) -> int:
    """Riemann-Hurwitz count of simple branch points, 2g - 2 - d + #D.

    May be negative; callers read that as "no cover exists".
    """
    return 2 * g - 2 - d + sum(len(p) for p in profile)


@dataclass(frozen=True)
class HurwitzQuery:
    d: int
    profile: tuple[Partition, Partition, Partition]
    simple_points: int = 0

    def __post_init__(self):
        if self.d <= 0:
            raise ValueError("degree must be positive")
        if len(self.profile) != 3:
            raise ValueError("a profile is a triple of partitions")
        prof = tuple(as_partition(p) for p in self.profile)
        for p in prof:
            if sum(p) != self.d:
                raise ValueError(f"partition {p} does not total d={self.d}")
        if self.simple_points < 0:
            raise ValueError("number of simple branch points must be >= 0")
        object.__setattr__(self, "profile", prof)

    @property
    def genus(self) -> Fraction:
        """Riemann-Hurwitz genus; may be negative or a half-integer."""
        n = sum(len(p) for p in self.profile)
        return Fraction(2 + self.d + self.simple_points - n, 2)

    @property
    def has_valid_genus(self) -> bool:
        g = self.genus
        return g.denominator == 1 and g >= 0


# -- counting kernels --------------------------------------------------------


def _count_class_iteration(q: HurwitzQuery, pinned: bool) -> int:
    """Number of monodromy tuples, iterating s_u, s_v and the transpositions.

    s_w is forced to be the inverse of t_r...t_1 s_u s_v. With ``pinned`` only
    one representative of the class of s_u is used and the count is scaled
    by the class size (the count is invariant under simultaneous conjugation).
    """
    d, (pu, pv, pw), r = q.d, q.profile, q.simple_points
    first = _class0(d, pu)
    us = [next(first)] if pinned else list(_class0(d, pu))
    vs = list(_class0(d, pv))
    transp = _transpositions0(d)
    count = 0
    for su in us:
        for sv in vs:
            base = _compose(su, sv)
            for ts in itertools.product(transp, repeat=r):
                prod = base
                for t in ts:
                    prod = _compose(t, prod)
                if _cycle_type(prod) != pw:
                    continue
                if _is_transitive((su, sv) + ts, d):
                    count += 1
    if pinned:
        count *= class_size(pu)
    return count


def naive_tuple_counts(d: int, r: int) -> dict[tuple[Partition, Partition, Partition], int]:
    """Tabulate the monodromy tuple count for every profile triple at once.

    Fully naive: s_u, s_v and s_w each range over all of S_d, the
    transpositions over all transpositions, and the product relation is
    tested rather than solved. Used as an independent oracle.
    """
    group = list(itertools.permutations(range(d)))
    types = {p: _cycle_type(p) for p in group}
    transp = _transpositions0(d)
    ident = tuple(range(d))
    counts: dict = {}
    for su in group:
        for sv in group:
            uv = _compose(su, sv)
            for sw in group:
                uvw = _compose(uv, sw)
                for ts in itertools.product(transp, repeat=r):
                    prod = uvw
                    for t in ts:
                        prod = _compose(t, prod)
                    if prod != ident:
                        continue
                    if not _is_transitive((su, sv, sw) + ts, d):
                        continue
                    key = (types[su], types[sv], types[sw])
                    counts[key] = counts.get(key, 0) + 1
    return counts


def hurwitz_unmarked_naive(q: HurwitzQuery) -> Fraction:
    if not q.has_valid_genus:
        return Fraction(0)
    counts = naive_tuple_counts(q.d, q.simple_points)
    return Fraction(counts.get(q.profile, 0), math.factorial(q.d))


# -- memoised public API -----------------------------------------------------

_memo: dict = {}
_memo_lock = threading.Lock()


def _memo_key(q: HurwitzQuery):
    return (q.d, tuple(sorted(q.profile)), q.simple_points)


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()


def hurwitz_unmarked(q: HurwitzQuery, *, pinned: bool = False, use_memo: bool = True) -> Fraction:
    """H with unmarked preimages: (1/d!) * #monodromy tuples.

    Returns 0 when the Riemann-Hurwitz genus is negative or non-integral.
    The memo is keyed on the sorted profile triple; the number is symmetric
    in the three special points.
    """
    if not q.has_valid_genus:
        return Fraction(0)
    key = _memo_key(q)
    if use_memo:
        with _memo_lock:
            hit = _memo.get(key)
        if hit is not None:
            return hit
    # the sorted order is as good as any and keeps memo hits bit-identical
    canon = HurwitzQuery(q.d, key[1], q.simple_points)
    value = Fraction(_count_class_iteration(canon, pinned), math.factorial(q.d))
    if use_memo:
        with _memo_lock:
            value = _memo.setdefault(key, value)
    return value


def hurwitz_marked(q: HurwitzQuery, **kw) -> Fraction:
    """H^g_d(D) with all preimages of 0, 1, infinity marked."""
    aut = math.prod(partition_aut(p) for p in q.profile)
    return hurwitz_unmarked(q, **kw) * aut


def hurwitz_number(d: int, u, v, w, *, r: int | None = None, g: int | None = None,
                   marked: bool = True) -> Fraction:
    """Convenience wrapper taking the genus or the simple-point count."""
    if (r is None) == (g is None):
        raise ValueError("give exactly one of r and g")
    if r is None:
        r = simple_count(d, (u, v, w), g)
        if r < 0:
            return Fraction(0)
    q = HurwitzQuery(d, (u, v, w), r)
    return hurwitz_marked(q) if marked else hurwitz_unmarked(q)


# -- boundary multiplicities -------------------------------------------------


class BoundaryCase(enum.Enum):
    CUT_SAME_COMPONENT = "cut_same_component"
    JOIN = "join"
    CUT_TWO_COMPONENTS = "cut_two_components"


@dataclass(frozen=True)
class BoundaryDatum:
    """A degeneration of the one-dimensional cover space as t hits 0, 1 or oo.

    ``sub_queries`` are the r = 0 covers of the second target component.
    """

    case: BoundaryCase
    m1: int
    m2: int
    sub_queries: tuple[HurwitzQuery, ...] = field(default=())

    def __post_init__(self):
        want = 2 if self.case is BoundaryCase.CUT_TWO_COMPONENTS else 1
        if len(self.sub_queries) != want:
            raise ValueError(f"{self.case.name} needs {want} sub-queries, got {len(self.sub_queries)}")
        if self.m1 <= 0 or self.m2 <= 0:
            raise ValueError("m1, m2 must be positive")
        if any(q.simple_points != 0 for q in self.sub_queries):
            raise ValueError("boundary sub-queries carry no simple branch points")


def boundary_multiplicity(b: BoundaryDatum) -> Fraction:
    """Multiplicity of a boundary point in the pull-back of 0, 1 or infinity.

    Cutting a part m = m1 + m2 inside one component gives m1*m2*H, halved for
    m1 == m2 since the two new preimages are unmarked. Joining two marked
    parts gives (m1 + m2)*H. Cutting into two components gives m1*m2*H1*H2.
    """
    hs = [hurwitz_marked(q) for q in b.sub_queries]
    if b.case is BoundaryCase.CUT_SAME_COMPONENT:
        mult = Fraction(b.m1 * b.m2) * hs[0]
        return mult / 2 if b.m1 == b.m2 else mult
    if b.case is BoundaryCase.JOIN:
        return (b.m1 + b.m2) * hs[0]
    return b.m1 * b.m2 * hs[0] * hs[1]


def format_fraction(x: Fraction) -> str:
    """'p/q', or the integer when the denominator is 1."""
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
