"""Capacitated orientations via maximum flow, plus solution verification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ValidationError
from .flow import INF, FlowNetwork
from .graph import CapacitatedInstance, DeletionSet, Graph


def _norm(u, v):
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Orientation:
    """Directed version of a set of edges on vertices ``0..n-1``.

    ``arcs`` holds one ``(tail, head)`` pair per oriented edge, sorted by edge.
    """

    n: int
    arcs: tuple = ()

    def __post_init__(self):
        arcs = tuple(sorted(((int(t), int(h)) for t, h in self.arcs), key=lambda a: _norm(*a)))
        seen = set()
        for t, h in arcs:
            e = _norm(t, h)
            if t == h or e in seen:
                raise ValidationError(f"edge ({t}, {h}) oriented twice or is a loop")
            seen.add(e)
        object.__setattr__(self, "arcs", arcs)

    @property
    def direction(self) -> dict:
        return {_norm(t, h): (t, h) for t, h in self.arcs}

    @property
    def in_degrees(self) -> tuple:
        deg = [0] * self.n
        for _, h in self.arcs:
            deg[h] += 1
        return tuple(deg)

    def edge_set(self) -> frozenset:
        return frozenset(_norm(t, h) for t, h in self.arcs)


@dataclass(frozen=True)
class DegreeBounds:
    lower: tuple
    upper: tuple

    def __post_init__(self):
        lo, up = tuple(self.lower), tuple(self.upper)
        if len(lo) != len(up):
            raise ValidationError("lower and upper bound vectors differ in length")
        for v, (a, b) in enumerate(zip(lo, up)):
            if a < 0 or a > b:
                raise ValidationError(f"bounds [{a}, {b}] at vertex {v} are not an interval")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", up)


class _EdgeNetwork:
    """source -> edge node (cap 1) -> both endpoints (cap 1) -> sink (cap c(v))."""

    def __init__(self, g: Graph, caps: Sequence[int]):
        self.edges = g.sorted_edges()
        n = g.n
        self.source, self.sink = 0, 1
        net = FlowNetwork(2 + n + len(self.edges))
        self.sink_arcs = [net.add_edge(2 + v, 1, caps[v]) for v in range(n)]
        self.source_arcs = []
        self.end_arcs = []
        for i, (u, v) in enumerate(self.edges):
            node = 2 + n + i
            self.source_arcs.append(net.add_edge(0, node, 1))
            self.end_arcs.append((net.add_edge(node, 2 + u, 1), net.add_edge(node, 2 + v, 1)))
        self.net = net
        self.n = n
        self.flow = net.max_flow(0, 1)

    @property
    def complete(self) -> bool:
        return self.flow == len(self.edges)

    def orientation(self) -> Orientation:
        arcs = []
        for (u, v), (au, _) in zip(self.edges, self.end_arcs):
            arcs.append((v, u) if self.net.flow_on(au) else (u, v))
        return Orientation(self.n, tuple(arcs))

    def violator(self) -> frozenset:
        """Vertex set R with more induced edges than total capacity.

        Grown from the first unsaturated edge node in the residual network.
        Every vertex reached is saturated and every unit of flow into it
        comes from an edge inside R, so |E(R)| > c(R).
        """
        for i, arc in enumerate(self.source_arcs):
            if self.net.residual(arc):
                reach = self.net.reachable(2 + self.n + i)
                return frozenset(x - 2 for x in reach if 2 <= x < 2 + self.n)
        raise AssertionError("network is saturated")


def _caps_vector(g: Graph, caps) -> list[int]:
    if isinstance(caps, int):
        return [caps] * g.n
    if isinstance(caps, Mapping):
        return [caps[v] for v in range(g.n)]
    caps = list(caps)
    if len(caps) != g.n:
        raise ValidationError(f"{len(caps)} capacities for {g.n} vertices")
    return caps


def feasible_orientation(g: Graph, caps) -> Orientation | None:
    """Orientation with in-degree at most ``caps[v]`` everywhere, or None."""
    caps = _caps_vector(g, caps)
    if sum(caps) < g.m:
        return None
    net = _EdgeNetwork(g, caps)
    return net.orientation() if net.complete else None


def orient_or_violator(g: Graph, caps) -> tuple[Orientation | None, frozenset | None]:
    """Either a feasible orientation or a vertex set that overloads its capacity."""
    caps = _caps_vector(g, caps)
    net = _EdgeNetwork(g, caps)
    if net.complete:
        return net.orientation(), None
    return None, net.violator()


def is_orientable(g: Graph, caps) -> bool:
    caps = _caps_vector(g, caps)
    if sum(caps) < g.m:
        return False
    return _EdgeNetwork(g, caps).complete


def orientation_with_bounds(g: Graph, bounds: DegreeBounds, fixed=None) -> Orientation | None:
    """Orientation with ``lower[v] <= indeg(v) <= upper[v]`` that extends ``fixed``.

    ``fixed`` is a mapping edge -> (tail, head) or an iterable of arcs.
    Solved as a circulation with lower bounds on the vertex-to-sink arcs.
    """
    n = g.n
    if len(bounds.lower) != n:
        raise ValidationError("bounds do not match the graph")
    arcs_fixed: dict = {}
    items = fixed.values() if isinstance(fixed, Mapping) else (fixed or ())
    if isinstance(fixed, Mapping):
        for key, arc in fixed.items():
            if _norm(*key) != _norm(*arc):
                raise ValidationError(f"direction {arc} does not match edge {key}")
    for t, h in items:
        e = _norm(t, h)
        if e not in g.edges:
            raise ValidationError(f"fixed direction on non-edge ({t}, {h})")
        if e in arcs_fixed and arcs_fixed[e] != (t, h):
            raise ValidationError(f"contradictory directions fixed on edge {e}")
        arcs_fixed[e] = (t, h)
    lower = list(bounds.lower)
    upper = list(bounds.upper)
    for _, h in arcs_fixed.values():
        lower[h] -= 1
        upper[h] -= 1
    if any(u < 0 for u in upper):
        return None
    lower = [max(0, x) for x in lower]
    free = [e for e in g.sorted_edges() if e not in arcs_fixed]
    if sum(lower) > len(free) or sum(upper) < len(free):
        return None

    # nodes: S=0, T=1, SS=2, TT=3, vertices 4.., edge nodes after
    net = FlowNetwork(4 + n + len(free))
    excess = [0] * net.n
    S, T, SS, TT = 0, 1, 2, 3
    for v in range(n):
        net.add_edge(4 + v, T, upper[v] - lower[v])
        excess[4 + v] -= lower[v]
        excess[T] += lower[v]
    end_arcs = []
    for i, (u, v) in enumerate(free):
        node = 4 + n + i
        # S -> e carries exactly one unit
        excess[S] -= 1
        excess[node] += 1
        end_arcs.append(net.add_edge(node, 4 + u, 1))
        net.add_edge(node, 4 + v, 1)
    net.add_edge(T, S, INF)
    need = 0
    for x, ex in enumerate(excess):
        if ex > 0:
            net.add_edge(SS, x, ex)
            need += ex
        elif ex < 0:
            net.add_edge(x, TT, -ex)
    if net.max_flow(SS, TT) != need:
        return None
    arcs = list(arcs_fixed.values())
    for (u, v), au in zip(free, end_arcs):
        arcs.append((v, u) if net.flow_on(au) else (u, v))
    return Orientation(n, tuple(arcs))


def rotation_orientation(d: int) -> Orientation:
    """Orientation of K_{2d+1} where vertex i points at i+1..i+d (mod 2d+1)."""
    if d < 0:
        raise ValidationError("d must be non-negative")
    size = 2 * d + 1
    arcs = [(i, (i + s) % size) for i in range(size) for s in range(1, d + 1)]
    return Orientation(size, tuple(arcs))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    message: str = ""
    vertex: int | None = None

    def __bool__(self):
        return self.ok


def verify_solution(inst: CapacitatedInstance, k, o: Orientation) -> Verdict:
    """Check deletion set ``k`` and orientation ``o`` (original vertex ids).

    ``o`` must orient exactly the edges of the graph that avoid ``k``;
    anything else is a structural error. Budget and capacity violations
    are reported in the verdict.
    """
    g = inst.graph
    members = k.members if isinstance(k, DeletionSet) else frozenset(k)
    DeletionSet(members).check(g)
    if o.n != g.n:
        raise ValidationError(f"orientation is over {o.n} vertices, graph has {g.n}")
    expected = {e for e in g.edges if e[0] not in members and e[1] not in members}
    got = o.edge_set()
    extra = got - expected
    if extra:
        e = min(extra)
        what = "a deleted vertex" if e in g.edges else "a non-edge"
        raise ValidationError(f"arc on edge ({e[0] + 1}, {e[1] + 1}) touches {what}")
    missing = expected - got
    if missing:
        e = min(missing)
        raise ValidationError(f"edge ({e[0] + 1}, {e[1] + 1}) is not oriented")
    if inst.budget is not None and len(members) > inst.budget:
        return Verdict(False, f"{len(members)} deletions exceed budget {inst.budget}")
    indeg = o.in_degrees
    for v in range(g.n):
        if v not in members and indeg[v] > inst.capacities[v]:
            return Verdict(
                False,
                f"vertex {v + 1} has in-degree {indeg[v]} above capacity {inst.capacities[v]}",
                v,
            )
    return Verdict(True, "ok")


def residual_orientation(inst: CapacitatedInstance, deleted: Iterable[int]) -> Orientation | None:
    """Orient G - deleted within capacities; arcs use original ids."""
    deleted = frozenset(deleted)
    g = inst.graph
    keep = [v for v in range(g.n) if v not in deleted]
    sub, index = g.induced(keep)
    o = feasible_orientation(sub, [inst.capacities[v] for v in keep])
    if o is None:
        return None
    return Orientation(g.n, tuple((keep[t], keep[h]) for t, h in o.arcs))
