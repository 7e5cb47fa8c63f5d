"""Seeded random graph generation for audits and property tests."""

from __future__ import annotations

import heapq
from itertools import combinations

import numpy as np

from .graphs import Graph, from_edges, is_connected


def random_graph(rng: np.random.Generator, n: int, m: int) -> Graph:
    """Uniform graph on n labelled vertices with exactly m edges."""
    pairs = list(combinations(range(n), 2))
    if not 0 <= m <= len(pairs):
        raise ValueError(f"m={m} out of range for n={n}")
    chosen = rng.choice(len(pairs), size=m, replace=False) if m else []
    return from_edges(n, [pairs[i] for i in chosen])


def random_connected_graph(rng: np.random.Generator, n: int, m: int, tries: int = 500) -> Graph:
    """Rejection-sample a connected (n, m)-graph."""
    if m < n - 1:
        raise ValueError(f"m={m} cannot connect {n} vertices")
    for _ in range(tries):
        g = random_graph(rng, n, m)
        if is_connected(g):
            return g
    raise RuntimeError(f"no connected graph with n={n}, m={m} found in {tries} tries")


def random_tree(rng: np.random.Generator, n: int) -> Graph:
    """Uniform labelled tree decoded from a random sequence of vertex picks."""
    if n < 2:
        return from_edges(n, [])
    if n == 2:
        return from_edges(2, [(0, 1)])
    seq = rng.integers(0, n, size=n - 2).tolist()
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    leaves = sorted(v for v in range(n) if degree[v] == 1)
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((min(u, v), max(u, v)))
    return from_edges(n, edges)


def random_connected_pair(
    rng: np.random.Generator,
    n: int,
    m: int,
    tries: int = 500,
) -> tuple[Graph, Graph]:
    """Two independently sampled connected graphs sharing (n, m)."""
    return (
        random_connected_graph(rng, n, m, tries),
        random_connected_graph(rng, n, m, tries),
    )
