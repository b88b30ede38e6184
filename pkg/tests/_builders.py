"""Compact construction of hand-made covers for tests."""

from trophurwitz.cover_graph import (
    CENTER,
    CoverEdge,
    CoverEnd,
    CoverType,
    CoverVertex,
    LinePosition,
    Ray,
)


def pos(spec):
    """'c' or e.g. 'u2'."""
    return CENTER if spec == "c" else LinePosition(Ray(spec[0]), int(spec[1:]))


def build(d, vertices, edges, ends):
    """vertices: (id, genus, labels, position); edges: (a, b, weight, ray);
    ends: (vertex, weight, ray, mark)."""
    vs = tuple(CoverVertex(i, g, frozenset(ls), pos(p)) for i, g, ls, p in vertices)
    es = tuple(CoverEdge(f"e{k}", (a, b), w, Ray(r)) for k, (a, b, w, r) in enumerate(edges, start=1))
    xs = tuple(CoverEnd(m, v, w, Ray(r), m) for v, w, r, m in ends)
    return CoverType(vs, es, xs, d)


def trivial():
    return build(1, [("c1", 0, (), "c")], [], [("c1", 1, "u", "a"), ("c1", 1, "v", "b"), ("c1", 1, "w", "x")])


def loop_cover(w1, w2, v_parts, w_parts, genus):
    """One center vertex joined to u1 by two edges of weights w1, w2 on ray u."""
    d = w1 + w2
    ends = [("u1", d, "u", "u1")]
    ends += [("c1", p, "v", f"v{i}") for i, p in enumerate(v_parts, 1)]
    ends += [("c1", p, "w", f"w{i}") for i, p in enumerate(w_parts, 1)]
    return build(d, [("c1", genus, (), "c"), ("u1", 0, {1}, "u1")],
                 [("c1", "u1", w1, "u"), ("c1", "u1", w2, "u")], ends)


def single_edge(weight=4):
    """Center vertex, one bounded edge of the given weight, a cut on ray u."""
    return build(weight, [("c1", 1, (), "c"), ("u1", 0, {1}, "u1")], [("c1", "u1", weight, "u")],
                 [("u1", weight - 1, "u", "a"), ("u1", 1, "u", "b"),
                  ("c1", weight // 2, "v", "p"), ("c1", weight - weight // 2, "v", "q"),
                  ("c1", weight, "w", "x")])
