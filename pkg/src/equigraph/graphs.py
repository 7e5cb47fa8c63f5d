"""Simple undirected graphs and the operations used to compose them.

Vertices are labelled 0..n-1 and the adjacency relation is stored as a dense
boolean matrix, which keeps every operation an exact integer/boolean
computation.  Graphs are immutable values: every operation returns a fresh
graph and instances are safe to share between threads.

Product vertex indexing is fixed to row-major order, i.e. the pair (u, v)
with u in the left factor and v in the right factor becomes index u*n2 + v,
so repeated runs produce byte-identical adjacency matrices.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import EdgeListFormatError, EmptyGraph, SubgraphTooLarge

# Dense boolean storage is quadratic in n; constructions in this package stay
# far below this cap.
MAX_DENSE_VERTICES = 4096


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("_adj", "_m")

    def __init__(self, adjacency) -> None:
        adj = np.array(adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {adj.shape}")
        n = adj.shape[0]
        if n > MAX_DENSE_VERTICES:
            raise ValueError(f"graph order {n} exceeds dense cap {MAX_DENSE_VERTICES}")
        if np.any(adj != adj.T):
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diagonal(adj)):
            raise ValueError("no loops allowed: diagonal must be empty")
        adj.setflags(write=False)
        self._adj = adj
        self._m = int(np.count_nonzero(adj)) // 2

    @property
    def n(self) -> int:
        """Number of vertices."""
        return self._adj.shape[0]

    @property
    def m(self) -> int:
        """Number of edges."""
        return self._m

    @property
    def adjacency(self) -> np.ndarray:
        """Read-only boolean adjacency matrix."""
        return self._adj

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1, dtype=np.int64)

    def degree_sequence(self) -> tuple[int, ...]:
        """Degrees sorted non-increasing (an isomorphism-invariant fingerprint)."""
        return tuple(sorted(self.degrees().tolist(), reverse=True))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        us, vs = np.nonzero(np.triu(self._adj, 1))
        return list(zip(us.tolist(), vs.tolist()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self._adj, other._adj))

    def __hash__(self) -> int:
        return hash((self.n, self._adj.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# constructors


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on n vertices from an iterable of (u, v) pairs."""
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    adj = np.zeros((n, n), dtype=bool)
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"loop ({u}, {v}) not allowed")
        if adj[u, v]:
            raise ValueError(f"duplicate edge ({u}, {v})")
        adj[u, v] = adj[v, u] = True
    return Graph(adj)


def empty_graph(n: int) -> Graph:
    return Graph(np.zeros((n, n), dtype=bool))


def complete_graph(n: int) -> Graph:
    adj = np.ones((n, n), dtype=bool)
    np.fill_diagonal(adj, False)
    return Graph(adj)


def complete_bipartite_graph(q: int, r: int) -> Graph:
    adj = np.zeros((q + r, q + r), dtype=bool)
    adj[:q, q:] = True
    adj[q:, :q] = True
    return Graph(adj)


def path_graph(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


# ---------------------------------------------------------------------------
# operations


def union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union; vertices of g2 are relabelled by offset g1.n."""
    n1, n2 = g1.n, g2.n
    adj = np.zeros((n1 + n2, n1 + n2), dtype=bool)
    adj[:n1, :n1] = g1.adjacency
    adj[n1:, n1:] = g2.adjacency
    return Graph(adj)


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every cross edge between the two parts."""
    n1 = g1.n
    adj = union(g1, g2).adjacency.copy()
    adj[:n1, n1:] = True
    adj[n1:, :n1] = True
    return Graph(adj)


def complement(g: Graph) -> Graph:
    """Edge (i, j), i != j, present exactly when absent in g."""
    adj = ~g.adjacency
    adj = adj.copy()
    np.fill_diagonal(adj, False)
    return Graph(adj)


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    """Box product: (u1,v1)~(u2,v2) iff equal in one coordinate, adjacent in the other."""
    a1, a2 = g1.adjacency, g2.adjacency
    i1, i2 = np.eye(g1.n, dtype=bool), np.eye(g2.n, dtype=bool)
    return Graph(np.kron(a1, i2) | np.kron(i1, a2))


def kronecker_product(g1: Graph, g2: Graph) -> Graph:
    """Tensor product: (u1,v1)~(u2,v2) iff adjacent in both coordinates."""
    return Graph(np.kron(g1.adjacency, g2.adjacency))


def kn_minus_edges(n: int, g: Graph) -> Graph:
    """Complete graph on n vertices with the edges of g removed.

    g is embedded on the lowest-indexed vertices 0..g.n-1.
    """
    if g.n > n:
        raise SubgraphTooLarge(f"subgraph has {g.n} vertices but the host has {n}")
    adj = complete_graph(n).adjacency.copy()
    adj[: g.n, : g.n] &= ~g.adjacency
    return Graph(adj)


# ---------------------------------------------------------------------------
# traversal

def _reachable_from(g: Graph, start: int) -> np.ndarray:
    seen = np.zeros(g.n, dtype=bool)
    seen[start] = True
    frontier = seen.copy()
    while frontier.any():
        frontier = g.adjacency[frontier].any(axis=0) & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph) -> bool:
    """True iff one traversal from vertex 0 reaches every vertex."""
    if g.n == 0:
        raise EmptyGraph("connectivity is undefined for the 0-vertex graph")
    return bool(_reachable_from(g, 0).all())


def component_count(g: Graph) -> int:
    remaining = np.ones(g.n, dtype=bool)
    count = 0
    while remaining.any():
        start = int(np.flatnonzero(remaining)[0])
        remaining &= ~_reachable_from(g, start)
        count += 1
    return count


def is_bipartite(g: Graph) -> bool:
    """Two-colourability check by traversal."""
    color = np.full(g.n, -1, dtype=np.int8)
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for v in np.flatnonzero(g.adjacency[u]):
                v = int(v)
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    stack.append(v)
                elif color[v] == color[u]:
                    return False
    return True


# ---------------------------------------------------------------------------
# edge-list text format
#
# Canonical form: first non-comment line holds n, every following non-empty
# line holds one edge "u v" with 0 <= u < v < n.  Lines starting with '#'
# are comments.  Duplicate edges are rejected.


def parse_edge_list(text: str) -> Graph:
    n = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise EdgeListFormatError(f"line {lineno}: expected vertex count, got {line!r}")
            try:
                n = int(fields[0])
            except ValueError:
                raise EdgeListFormatError(f"line {lineno}: bad vertex count {fields[0]!r}") from None
            if n < 0:
                raise EdgeListFormatError(f"line {lineno}: vertex count must be non-negative")
            continue
        if len(fields) != 2:
            raise EdgeListFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise EdgeListFormatError(f"line {lineno}: non-integer endpoint in {line!r}") from None
        if not (0 <= u < v < n):
            raise EdgeListFormatError(f"line {lineno}: edge ({u}, {v}) violates 0 <= u < v < {n}")
        if (u, v) in seen:
            raise EdgeListFormatError(f"line {lineno}: duplicate edge ({u}, {v})")
        seen.add((u, v))
        edges.append((u, v))
    if n is None:
        raise EdgeListFormatError("missing vertex-count header line")
    return from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))
