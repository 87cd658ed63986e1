"""Graphs, capacitated instances, text formats and random generators.

Vertex ids are dense integers ``0..n-1`` in memory and ``1..n`` in files.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import ParseError, RangeError, ValidationError


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``edges`` holds normalized pairs ``(u, v)`` with ``u < v``.
    """

    n: int
    edges: frozenset = frozenset()
    adjacency: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError("vertex count must be non-negative")
        adj = [[] for _ in range(self.n)]
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValidationError(f"edge ({u}, {v}) references an unknown vertex")
            normalized.add(_norm(u, v))
        for u, v in normalized:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], strict: bool = True) -> "Graph":
        """Build a graph; with ``strict`` a repeated edge is an error."""
        seen = set()
        for u, v in edges:
            e = _norm(u, v)
            if strict and e in seen:
                raise ValidationError(f"duplicate edge ({u}, {v})")
            seen.add(e)
        return cls(n, frozenset(seen))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls(a + b, frozenset((u, a + v) for u in range(a) for v in range(b)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValidationError("a cycle needs at least 3 vertices")
        return cls(n, frozenset(_norm(i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, frozenset((i, i + 1) for i in range(n - 1)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced(self, keep: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph on ``keep``; returns it with an old->new id map."""
        kept = sorted(set(keep))
        index = {v: i for i, v in enumerate(kept)}
        edges = frozenset(
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        )
        return Graph(len(kept), edges), index


@dataclass(frozen=True)
class CapacitatedInstance:
    """A graph with in-degree bound ``d``, per-vertex capacities and an optional budget."""

    graph: Graph
    d: int
    capacities: tuple = ()
    budget: int | None = None

    def __post_init__(self):
        if self.d < 0:
            raise RangeError(f"bound d={self.d} must be non-negative")
        caps = tuple(self.capacities) if self.capacities else (self.d,) * self.graph.n
        if len(caps) != self.graph.n:
            raise ValidationError(
                f"{len(caps)} capacities given for {self.graph.n} vertices"
            )
        for v, c in enumerate(caps):
            if not 0 <= c <= self.d:
                raise RangeError(f"capacity {c} of vertex {v + 1} outside [0, {self.d}]")
        if self.budget is not None and self.budget < 0:
            raise RangeError(f"budget {self.budget} must be non-negative")
        object.__setattr__(self, "capacities", caps)

    @classmethod
    def uniform(cls, graph: Graph, d: int, budget: int | None = None) -> "CapacitatedInstance":
        return cls(graph, d, (d,) * graph.n, budget)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def is_uniform(self) -> bool:
        return all(c == self.d for c in self.capacities)

    def with_budget(self, budget: int | None) -> "CapacitatedInstance":
        return CapacitatedInstance(self.graph, self.d, self.capacities, budget)


@dataclass(frozen=True)
class DeletionSet:
    members: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, v):
        return v in self.members

    def check(self, graph: Graph) -> None:
        bad = [v for v in self.members if not 0 <= v < graph.n]
        if bad:
            raise ValidationError(f"unknown vertex id {min(bad) + 1} in deletion set")


def delete_vertices(g: Graph, k: DeletionSet | Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Remove ``k`` from ``g``; returns the induced remainder and the id remapping."""
    members = k.members if isinstance(k, DeletionSet) else frozenset(k)
    DeletionSet(members).check(g)
    return g.induced(v for v in range(g.n) if v not in members)


# ---------------------------------------------------------------------------
# extended DIMACS text format


def _ints(parts, lineno, count):
    if len(parts) != count:
        raise ParseError(f"expected {count} fields, got {len(parts)}", lineno)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"non-integer field in {' '.join(parts)!r}", lineno) from None


def parse_instance(text: str) -> CapacitatedInstance:
    """Parse the ``p orient`` format into an instance (ids become 0-based)."""
    n = m = d = budget = None
    edges: list[tuple[int, int]] = []
    seen_edges: set = set()
    caps: dict[int, tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "orient":
                raise ParseError("header must read 'p orient <n> <m>'", lineno)
            n, m = _ints(parts[2:], lineno, 2)
            if n < 0 or m < 0:
                raise RangeError("negative size in header", lineno)
            continue
        if n is None:
            raise ParseError(f"{tag!r} line before the header", lineno)
        if tag == "d":
            if d is not None:
                raise ParseError("duplicate 'd' line", lineno)
            (d,) = _ints(parts[1:], lineno, 1)
            if d < 0:
                raise RangeError(f"bound d={d} must be non-negative", lineno)
        elif tag == "e":
            u, v = _ints(parts[1:], lineno, 2)
            for x in (u, v):
                if not 1 <= x <= n:
                    raise RangeError(f"vertex {x} outside [1, {n}]", lineno)
            if u == v:
                raise ValidationError(f"line {lineno}: self-loop at vertex {u}")
            e = _norm(u - 1, v - 1)
            if e in seen_edges:
                raise ValidationError(f"line {lineno}: duplicate edge ({u}, {v})")
            seen_edges.add(e)
            edges.append(e)
        elif tag == "v":
            u, c = _ints(parts[1:], lineno, 2)
            if not 1 <= u <= n:
                raise RangeError(f"vertex {u} outside [1, {n}]", lineno)
            if u - 1 in caps:
                raise ValidationError(f"line {lineno}: second capacity for vertex {u}")
            caps[u - 1] = (c, lineno)
        elif tag == "k":
            if budget is not None:
                raise ParseError("duplicate 'k' line", lineno)
            (budget,) = _ints(parts[1:], lineno, 1)
            if budget < 0:
                raise RangeError(f"budget {budget} must be non-negative", lineno)
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise ParseError("missing 'p orient' header")
    if d is None:
        raise ParseError("missing 'd' line")
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges but {len(edges)} were given")
    capacities = [d] * n
    for u, (c, lineno) in caps.items():
        if not 0 <= c <= d:
            raise RangeError(f"capacity {c} of vertex {u + 1} outside [0, {d}]", lineno)
        capacities[u] = c
    return CapacitatedInstance(Graph(n, frozenset(edges)), d, tuple(capacities), budget)


def serialize_instance(inst: CapacitatedInstance) -> str:
    g = inst.graph
    lines = [f"p orient {g.n} {g.m}", f"d {inst.d}"]
    if inst.budget is not None:
        lines.append(f"k {inst.budget}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.sorted_edges())
    lines.extend(
        f"v {u + 1} {c}" for u, c in enumerate(inst.capacities) if c != inst.d
    )
    return "\n".join(lines) + "\n"


def read_instance(path) -> CapacitatedInstance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def parse_graph_text(text: str) -> Graph:
    """Read a plain graph: DIMACS ``p edge``/``p col`` or the ``p orient`` format."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if parts[1] == "orient":
                return parse_instance(text).graph
            if len(parts) != 4:
                raise ParseError("header must read 'p <format> <n> <m>'", lineno)
            n = _ints(parts[2:3], lineno, 1)[0]
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge before header", lineno)
            u, v = _ints(parts[1:], lineno, 2)
            if not (1 <= u <= n and 1 <= v <= n):
                raise RangeError(f"vertex outside [1, {n}]", lineno)
            if u == v:
                raise ValidationError(f"line {lineno}: self-loop at vertex {u}")
            edges.append((u - 1, v - 1))
        elif parts[0] in ("d", "v", "k"):
            continue
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise ParseError("missing header")
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# random instances


def random_graph(n: int, edge_probability, seed: int) -> Graph:
    """Erdos-Renyi G(n, p), a pure function of ``seed``."""
    if n < 0:
        raise ValidationError("n must be non-negative")
    p = float(edge_probability)
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, frozenset(edges))


def random_chordal(n: int, fill_probability, seed: int) -> Graph:
    """Random chordal graph.

    Vertices arrive in a random order; each newcomer picks one current
    maximal clique and attaches to a random subset of it, so its earlier
    neighbourhood is always a clique.
    """
    if n < 0:
        raise ValidationError("n must be non-negative")
    p = float(fill_probability)
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    cliques: list[list[int]] = []
    edges = []
    for v in order:
        if not cliques:
            cliques.append([v])
            continue
        idx = rng.randrange(len(cliques))
        chosen = cliques[idx]
        subset = [u for u in chosen if rng.random() < p]
        edges.extend((u, v) for u in subset)
        if len(subset) == len(chosen):
            chosen.append(v)
        else:
            cliques.append(subset + [v])
    return Graph(n, frozenset(_norm(u, v) for u, v in edges))


def random_capacities(n: int, d: int, seed: int) -> tuple:
    rng = random.Random(seed)
    return tuple(rng.randint(0, d) for _ in range(n))


# ---------------------------------------------------------------------------
# witness format


def format_witness(deleted: Iterable[int], arcs: Iterable[tuple[int, int]]) -> str:
    lines = [f"del {u + 1}" for u in sorted(deleted)]
    lines.extend(f"arc {t + 1} {h + 1}" for t, h in sorted(arcs, key=lambda a: (_norm(*a), a)))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_witness(text: str, n: int | None = None) -> tuple[frozenset, list[tuple[int, int]]]:
    """Parse ``del``/``arc`` lines; ``result`` and comment lines are skipped."""
    deleted = set()
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] in ("c", "result"):
            continue
        if parts[0] == "del":
            (u,) = _ints(parts[1:], lineno, 1)
            ids = [u]
        elif parts[0] == "arc":
            ids = _ints(parts[1:], lineno, 2)
        else:
            raise ParseError(f"unknown witness line {parts[0]!r}", lineno)
        for x in ids:
            if x < 1 or (n is not None and x > n):
                raise RangeError(f"vertex {x} out of range", lineno)
        if parts[0] == "del":
            deleted.add(ids[0] - 1)
        else:
            arcs.append((ids[0] - 1, ids[1] - 1))
    return frozenset(deleted), arcs


def capacities_of(inst_or_caps) -> Sequence[int]:
    if isinstance(inst_or_caps, CapacitatedInstance):
        return inst_or_caps.capacities
    if isinstance(inst_or_caps, Mapping):
        return inst_or_caps
    return tuple(inst_or_caps)
