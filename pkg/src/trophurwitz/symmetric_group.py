"""Permutations of {1, ..., d}, partitions and marked partitions.

Permutations are stored as one-indexed image tuples; cycles are derived on
demand. The hot loops in :mod:`trophurwitz.hurwitz_oracle` work on raw
zero-indexed tuples and use the ``_``-prefixed helpers below directly.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Partition = tuple[int, ...]


def as_partition(parts: Iterable[int] | int) -> Partition:
    """Normalise a multiset of positive integers to a descending tuple.

    A bare integer is read as a one-part partition.
    """
    if isinstance(parts, int):
        parts = (parts,)
    out = tuple(sorted((int(p) for p in parts), reverse=True))
    if not out or any(p <= 0 for p in out):
        raise ValueError(f"partition parts must be positive and non-empty: {out!r}")
    return out


def partition_aut(t: Iterable[int]) -> int:
    """Order of the automorphism group of a partition: prod_m a_m! ."""
    return math.prod(math.factorial(a) for a in Counter(t).values())


def centralizer_order(t: Iterable[int]) -> int:
    """z(t) = prod_m m^{a_m} a_m!, so that |class(t)| = d!/z(t)."""
    return math.prod(m**a * math.factorial(a) for m, a in Counter(t).items())


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` as descending tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class MarkedPartition:
    """A partition whose parts carry pairwise distinct marks.

    Parts are kept size-descending with ties broken by mark, which makes the
    JSON form canonical.
    """

    parts: tuple[tuple[int, str], ...]

    def __post_init__(self):
        parts = tuple((int(s), str(m)) for s, m in self.parts)
        if not parts:
            raise ValueError("a marked partition needs at least one part")
        if any(s <= 0 for s, _ in parts):
            raise ValueError(f"part sizes must be positive: {parts!r}")
        marks = [m for _, m in parts]
        if len(set(marks)) != len(marks):
            raise ValueError(f"marks must be distinct: {marks!r}")
        object.__setattr__(self, "parts", tuple(sorted(parts, key=lambda p: (-p[0], p[1]))))

    @classmethod
    def auto(cls, sizes: Iterable[int], prefix: str = "") -> "MarkedPartition":
        """Mark the parts ``prefix1, prefix2, ...`` in input order."""
        return cls(tuple((s, f"{prefix}{i}") for i, s in enumerate(sizes, start=1)))

    @property
    def total(self) -> int:
        return sum(s for s, _ in self.parts)

    @property
    def sizes(self) -> Partition:
        return tuple(s for s, _ in self.parts)

    @property
    def marks(self) -> tuple[str, ...]:
        return tuple(m for _, m in self.parts)

    def __len__(self):
        return len(self.parts)

    def to_json(self) -> list:
        return [[s, m] for s, m in self.parts]

    @classmethod
    def from_json(cls, data) -> "MarkedPartition":
        return cls(tuple((s, m) for s, m in data))


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1, ..., d} given by its images (position i holds p(i))."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images!r}")
        object.__setattr__(self, "images", images)

    @property
    def d(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(tuple(range(1, d + 1)))

    @classmethod
    def from_cycles(cls, d: int, *cycles: Sequence[int]) -> "Permutation":
        """Build from disjoint cycles, e.g. ``from_cycles(5, (1, 2), (3, 4, 5))``."""
        images = list(range(1, d + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a - 1] = b
        return cls(tuple(images))

    def cycles(self) -> list[tuple[int, ...]]:
        return [tuple(i + 1 for i in c) for c in _cycles(_to0(self))]

    def inverse(self) -> "Permutation":
        return Permutation(_from0(_inverse(_to0(self))))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __repr__(self):
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1)
        return f"Permutation<{self.d}>{cyc or '()'}"


# -- zero-indexed kernels ----------------------------------------------------


def _to0(p: Permutation) -> tuple[int, ...]:
    return tuple(i - 1 for i in p.images)


def _from0(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(i + 1 for i in p)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # i -> p(q(i))
    return tuple([p[j] for j in q])


def _inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def _cycles(p: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = p[i]
        out.append(cyc)
    return out


def _cycle_type(p: Sequence[int]) -> Partition:
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        n = 0
        i = start
        while not seen[i]:
            seen[i] = True
            n += 1
            i = p[i]
        lengths.append(n)
    lengths.sort(reverse=True)
    return tuple(lengths)


def _is_transitive(gens: Sequence[Sequence[int]], d: int) -> bool:
    seen = [False] * d
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        i = stack.pop()
        for g in gens:
            j = g[i]
            if not seen[j]:
                seen[j] = True
                count += 1
                stack.append(j)
    return count == d


def _class0(d: int, t: Partition) -> Iterator[tuple[int, ...]]:
    """Zero-indexed conjugacy class enumeration (canonical cycle filling)."""
    images = [-1] * d
    remaining = Counter(t)

    def fill(unused: list[int]) -> Iterator[tuple[int, ...]]:
        if not unused:
            yield tuple(images)
            return
        lead, rest = unused[0], unused[1:]
        for length in sorted(remaining):
            if remaining[length] == 0 or length - 1 > len(rest):
                continue
            remaining[length] -= 1
            for tail in _arrangements(rest, length - 1):
                cyc = (lead,) + tail
                for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                    images[a] = b
                left = [x for x in rest if x not in tail]
                yield from fill(left)
            remaining[length] += 1

    yield from fill(list(range(d)))


def _arrangements(pool: list[int], k: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for i, x in enumerate(pool):
        for tail in _arrangements(pool[:i] + pool[i + 1 :], k - 1):
            yield (x,) + tail


def _transpositions0(d: int) -> list[tuple[int, ...]]:
    out = []
    for a in range(d):
        for b in range(a + 1, d):
            t = list(range(d))
            t[a], t[b] = b, a
            out.append(tuple(t))
    return out


# -- public operations -------------------------------------------------------


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The permutation i -> p(q(i))."""
    if p.d != q.d:
        raise ValueError(f"degree mismatch: {p.d} vs {q.d}")
    return Permutation(_from0(_compose(_to0(p), _to0(q))))


def cycle_type(p: Permutation) -> Partition:
    """Cycle lengths of ``p`` (fixed points included), descending."""
    return _cycle_type(_to0(p))


def conjugacy_class(d: int, t: Iterable[int]) -> Iterator[Permutation]:
    """Every permutation of S_d with cycle type ``t``, each exactly once.

    The smallest unused point always opens the next cycle, so no seen-set is
    needed to avoid duplicates.
    """
    t = as_partition(t)
    if sum(t) != d:
        raise ValueError(f"partition {t} does not total {d}")
    for p in _class0(d, t):
        yield Permutation(_from0(p))


def class_size(t: Iterable[int]) -> int:
    t = tuple(t)
    return math.factorial(sum(t)) // centralizer_order(t)


def is_transitive(gens: Sequence[Permutation], d: int) -> bool:
    """True iff the orbit of 1 under the generated group is all of {1..d}."""
    if any(g.d != d for g in gens):
        raise ValueError("generator of the wrong degree")
    return _is_transitive([_to0(g) for g in gens], d)
