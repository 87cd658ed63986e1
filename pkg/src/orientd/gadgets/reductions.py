"""Reductions from dominating set and independent set."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ValidationError
from ..graph import CapacitatedInstance, Graph
from .basic import InstanceBuilder


@dataclass(frozen=True)
class Reduction:
    instance: CapacitatedInstance
    roles: dict
    target: int | None = None


def reduce_dominating_set(g: Graph) -> Reduction:
    """Capacitated instance with d=2 whose optimum equals the domination number.

    V1 copies (capacity 0) come first, then the V2 roots (capacity 1). Each
    root v heads a full binary tree in heap layout whose leaves are the V1
    copies of N[v] in sorted order; internal vertices have capacity 2.
    A closed neighbourhood of size one gives a single root-leaf edge with
    the root at capacity 0, so an isolated vertex still costs one deletion.
    """
    b = InstanceBuilder(2)
    v1 = b.vertices(g.n, 0, "V1")
    roots = [b.vertex(1) for _ in range(g.n)]
    b.roles["V2"] = tuple(roots)
    internal = []
    for v in range(g.n):
        leaves = [v1[u] for u in sorted(set(g.neighbors(v)) | {v})]
        size = len(leaves)
        if size == 1:
            b.caps[roots[v]] = 0
            b.edge(roots[v], leaves[0])
            continue
        # heap indices 1..2L-1; 1 is the root, L..2L-1 are the leaves
        node = {1: roots[v]}
        for i in range(2, size):
            node[i] = b.vertex(2)
            internal.append(node[i])
        for i in range(size, 2 * size):
            node[i] = leaves[i - size]
        for i in range(2, 2 * size):
            b.edge(node[i // 2], node[i])
    b.roles["internal"] = tuple(internal)
    return Reduction(b.build(), b.roles)


def reduce_is_chordal(g: Graph, k: int) -> Reduction:
    """Split-graph instance (d=k) feasible at budget n-k iff g has an independent k-set.

    Every edge is subdivided by a capacity-1 vertex and the original
    vertices, at capacity (k-1)/2, are made into a clique.
    """
    if k < 1 or k % 2 == 0:
        raise ValidationError(f"independent-set size k={k} must be odd and positive")
    if k > g.n:
        raise ValidationError(f"k={k} exceeds the vertex count {g.n}")
    b = InstanceBuilder(k)
    orig = b.vertices(g.n, (k - 1) // 2, "V")
    b.clique(orig)
    subs = []
    for u, v in g.sorted_edges():
        s = b.vertex(1)
        b.edge(s, orig[u])
        b.edge(s, orig[v])
        subs.append(s)
    b.roles["subdivision"] = tuple(subs)
    budget = g.n - k
    return Reduction(b.build(budget), b.roles, budget)


def reduce_ds_chordal(g: Graph, k: int) -> Reduction:
    """Split-graph instance feasible at budget k iff g has a dominating set of size <= k.

    V1 vertex u (capacity deg(u)) sees the V2 copies of N[u]; V2 is a
    clique with capacity (n-k-1)/2. When n-k is even a disjoint edge is
    added and k grows by one, which flips the parity and shifts the
    domination number by exactly one.
    """
    if k < 0:
        raise ValidationError("k must be non-negative")
    k = min(k, g.n)
    n = g.n
    edges = list(g.sorted_edges())
    if (n - k) % 2 == 0:
        edges.append((n, n + 1))
        n += 2
        k += 1
    h = Graph(n, frozenset(edges))
    half = (n - k - 1) // 2
    d = max([half] + [h.degree(u) for u in range(n)])
    b = InstanceBuilder(d)
    v1 = [b.vertex(h.degree(u)) for u in range(n)]
    v2 = b.vertices(n, half)
    b.roles["V1"] = tuple(v1)
    b.roles["V2"] = tuple(v2)
    b.clique(v2)
    for u in range(n):
        for v in sorted(set(h.neighbors(u)) | {u}):
            b.edge(v1[u], v2[v])
    if n != g.n:
        b.roles["padding"] = (n - 2, n - 1)
    return Reduction(b.build(k), b.roles, k)
