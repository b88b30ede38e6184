"""Integer linear algebra for the cycle equations of a cover type.

Bounded edge lengths of a cover cannot be chosen freely: after identifying
all vertices over c, every loop of the resulting graph must close up on L.
These equations have integer coefficients (the edge weights). Their lattice
index enters the cell weight, and together with the branch map it
reproduces the product of bounded edge weights.

Everything here is exact integer arithmetic.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import reduce

from .cover_graph import CoverType, UnionFind, is_trivalent_type
from .exceptions import InvariantError

Matrix = list[list[int]]

HUB = "<c>"


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "IntegerMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), cols, rows)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class CycleSystem:
    matrix: IntegerMatrix
    column_edges: tuple[str, ...]
    tree_edges: frozenset


# -- building the equations --------------------------------------------------


def _hub_graph(c: CoverType):
    """Adjacency of the graph with every center vertex merged into one hub.

    Each entry is (neighbour, edge, sign) where sign is +1 when walking the
    edge away from the center.
    """
    node = {v.id: (HUB if v.at_center else v.id) for v in c.vertices}
    adj = {HUB: []}
    for v in c.ray_vertices():
        adj[v.id] = []
    for e in c.edges:
        a, b = e.endpoints
        va, vb = c.vertex(a), c.vertex(b)
        # orient inner -> outer
        if vb.at_center or (not va.at_center and va.image.slot > vb.image.slot):
            a, b = b, a
        na, nb = node[a], node[b]
        adj[na].append((nb, e, +1))
        adj[nb].append((na, e, -1))
    return adj


def _spanning_tree(adj, order_key=None):
    """BFS tree from the hub: parent pointers (node -> (parent, edge, sign))."""
    parent = {HUB: None}
    queue = deque([HUB])
    while queue:
        x = queue.popleft()
        nbrs = adj[x] if order_key is None else sorted(adj[x], key=order_key)
        for y, e, sign in nbrs:
            if y not in parent:
                parent[y] = (x, e, sign)
                queue.append(y)
    return parent


def _path_from_hub(parent, x):
    """Signed edges along the tree path hub -> x (sign +1 = outward)."""
    path = []
    while parent[x] is not None:
        p, e, sign = parent[x]
        path.append((e, sign))
        x = p
    return path[::-1]


def cycle_equations(c: CoverType, *, reverse_tree: bool = False, flip_signs: bool = False) -> CycleSystem:
    """One closing equation per bounded edge outside a spanning tree.

    Going around the fundamental cycle of a non-tree edge, an edge walked
    away from the center contributes +w_e x_e and one walked toward it
    -w_e x_e. Common factors are kept. ``reverse_tree`` picks a different
    spanning tree and ``flip_signs`` the opposite orientation convention.
    """
    adj = _hub_graph(c)
    cols = tuple(e.id for e in c.edges)
    col = {eid: i for i, eid in enumerate(cols)}
    key = (lambda t: t[1].id) if not reverse_tree else (lambda t: _neg_key(t[1].id))
    parent = _spanning_tree(adj, key)
    tree = {p[1].id for p in parent.values() if p is not None}
    if len(parent) != len(adj):
        raise ValueError("cover graph is disconnected")
    weight = {e.id: e.weight for e in c.edges}
    rows = []
    for e in c.edges:
        if e.id in tree:
            continue
        a_node, b_node = _edge_nodes(adj, e)
        row = [0] * len(cols)
        # hub -> a, then a -> b along e, then b -> hub
        for edge, sign in _path_from_hub(parent, a_node):
            row[col[edge.id]] += sign * weight[edge.id]
        row[col[e.id]] += weight[e.id]
        for edge, sign in _path_from_hub(parent, b_node):
            row[col[edge.id]] -= sign * weight[edge.id]
        if flip_signs:
            row = [-x for x in row]
        rows.append(row)
    return CycleSystem(IntegerMatrix.from_rows(rows, len(cols)), cols, frozenset(tree))


def _neg_key(s: str):
    return tuple(-ord(ch) for ch in s)


def _edge_nodes(adj, e):
    """(inner node, outer node) of edge ``e`` in the hub graph."""
    for x, lst in adj.items():
        for y, f, sign in lst:
            if f.id == e.id and sign == +1:
                return x, y
    raise KeyError(e.id)


# -- exact determinants and normal forms -------------------------------------


def det(m: Matrix) -> int:
    """Bareiss fraction-free determinant."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: Matrix) -> int:
    """Rank over the rationals (fraction-free elimination)."""
    a = [list(r) for r in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            if a[i][c]:
                f, g = a[i][c], a[r][c]
                a[i] = [x * g - y * f for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def maximal_minors(m: Matrix) -> list[int]:
    """All rows x rows minors, one per column subset."""
    k = len(m)
    if k == 0:
        return [1]
    cols = len(m[0])
    return [det([[row[j] for j in sub] for row in m]) for sub in itertools.combinations(range(cols), k)]


def smith_diagonal(m: Matrix) -> list[int]:
    """Diagonal of a Smith-type reduction (unimodular row and column moves)."""
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
            rest = [(abs(a[i][t]), i, "r") for i in range(t + 1, rows) if a[i][t]]
            rest += [(abs(a[t][j]), j, "c") for j in range(t + 1, cols) if a[t][j]]
            if rest:
                _, k, kind = min(rest)
                if kind == "r":
                    a[t], a[k] = a[k], a[t]
                else:
                    for row in a:
                        row[t], row[k] = row[k], row[t]
                done = False
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p), None)
            if bad is not None:
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                done = False
        diag.append(abs(a[t][t]))
        t += 1
    return diag


MINOR_COLUMN_LIMIT = 16


def lattice_index(m: IntegerMatrix | Matrix) -> int:
    """Index of the image lattice of ``m``: gcd of its maximal minors.

    An empty system has index 1. Raises ValueError for rationally dependent
    rows, where the index is not finite.
    """
    rows = [list(r) for r in (m.entries if isinstance(m, IntegerMatrix) else m)]
    if not rows:
        return 1
    if rank(rows) != len(rows):
        raise ValueError("rows are linearly dependent over Q")
    if len(rows[0]) <= MINOR_COLUMN_LIMIT:
        return reduce(math.gcd, (abs(x) for x in maximal_minors(rows)), 0)
    return math.prod(smith_diagonal(rows))


def kernel_lattice(m: IntegerMatrix | Matrix, cols: int | None = None) -> list[tuple[int, ...]]:
    """Basis of the saturated kernel {x in Z^n : m x = 0}.

    Unimodular column operations bring ``m`` to column echelon form; the
    transform columns that end up under zero columns span the kernel over Z.
    Each vector is sign-normalised (first non-zero entry positive).
    """
    if isinstance(m, IntegerMatrix):
        cols, rows = m.cols, [list(r) for r in m.entries]
    else:
        rows = [list(r) for r in m]
        if cols is None:
            cols = len(rows[0]) if rows else 0
    n = cols
    a = [list(r) for r in rows]
    u = [[int(i == j) for j in range(n)] for i in range(n)]  # columns of u track the transform

    def colop(p, q, s, t, x, y):
        # (col_p, col_q) <- (s col_p + t col_q, x col_p + y col_q), det = s*y - t*x = +-1
        for mat in (a, u):
            for row in mat:
                cp, cq = row[p], row[q]
                row[p], row[q] = s * cp + t * cq, x * cp + y * cq

    piv = 0
    for i in range(len(a)):
        if piv == n:
            break
        for j in range(piv + 1, n):
            if a[i][j] == 0:
                continue
            if a[i][piv] == 0:
                colop(piv, j, 0, 1, 1, 0)
                continue
            g, s, t = _xgcd(a[i][piv], a[i][j])
            x, y = -a[i][j] // g, a[i][piv] // g
            colop(piv, j, s, t, x, y)
        if a[i][piv] != 0:
            piv += 1
    basis = []
    for j in range(piv, n):
        v = [u[i][j] for i in range(n)]
        first = next((x for x in v if x), 0)
        if first < 0:
            v = [-x for x in v]
        basis.append(tuple(v))
    return basis


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b = g = gcd(a, b) > 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


# -- spanning trees ----------------------------------------------------------


def _hub_edges(c: CoverType):
    """(node_a, node_b, edge) with center vertices merged into the hub."""
    node = {v.id: (HUB if v.at_center else v.id) for v in c.vertices}
    return [(node[e.endpoints[0]], node[e.endpoints[1]], e) for e in c.edges]


def spanning_tree_products(c: CoverType) -> list[int]:
    """prod of weights outside T, for every spanning tree T of the hub graph."""
    edges = _hub_edges(c)
    nodes = {HUB} | {v.id for v in c.ray_vertices()}
    k = len(nodes) - 1
    out = []
    for tree in itertools.combinations(range(len(edges)), k):
        uf = UnionFind(nodes)
        if all(uf.union(edges[i][0], edges[i][1]) for i in tree):
            chosen = set(tree)
            out.append(math.prod(edges[i][2].weight for i in range(len(edges)) if i not in chosen))
    return out


def spanning_tree_index(c: CoverType) -> int:
    """gcd over spanning trees T of the product of weights of edges not in T."""
    return reduce(math.gcd, spanning_tree_products(c), 0)


# -- branch map --------------------------------------------------------------


def branch_matrix(c: CoverType, columns: tuple[str, ...]) -> tuple[list[str], Matrix]:
    """Rows: ray vertices; entry = coefficient of x_e in that vertex's distance from c."""
    adj = _hub_graph(c)
    parent = _spanning_tree(adj, lambda t: t[1].id)
    col = {eid: i for i, eid in enumerate(columns)}
    weight = {e.id: e.weight for e in c.edges}
    names = sorted(v.id for v in c.ray_vertices())
    rows = []
    for vid in names:
        row = [0] * len(columns)
        for e, sign in _path_from_hub(parent, vid):
            row[col[e.id]] += sign * weight[e.id]
        rows.append(row)
    return names, rows


def branch_multiplicity_lattice(c: CoverType) -> int:
    """Index of the branch map restricted to the integer points of the cell.

    The branch map sends edge lengths to the positions of the ray vertices.
    On the cell it factors through the kernel lattice of the cycle
    equations; the multiplicity is |det| of the composite.
    """
    if not is_trivalent_type(c):
        raise ValueError("branch multiplicity is defined for trivalent types only")
    system = cycle_equations(c)
    basis = kernel_lattice(system.matrix)
    _, b = branch_matrix(c, system.column_edges)
    square = [[sum(bi * ki for bi, ki in zip(brow, k)) for k in basis] for brow in b]
    if len(square) != len(basis):
        raise InvariantError(f"{len(square)} ray vertices but kernel rank {len(basis)}")
    value = abs(det(square))
    if value == 0:
        raise InvariantError("branch map is degenerate on the cell")
    return value
