"""Tree decompositions: PACE format, validation, nice form, heuristics."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..errors import DecompositionError, ParseError, RangeError
from ..graph import Graph
from ..orientation import Verdict


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags keyed by id, joined by an undirected tree (or path)."""

    bags: dict
    tree: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "bags", {b: frozenset(s) for b, s in self.bags.items()})
        object.__setattr__(self, "tree", tuple(tuple(e) for e in self.tree))

    @property
    def width(self) -> int:
        if not self.bags:
            return -1
        return max(len(s) for s in self.bags.values()) - 1

    def neighbors(self) -> dict:
        adj = {b: [] for b in self.bags}
        for a, b in self.tree:
            adj[a].append(b)
            adj[b].append(a)
        for b in adj:
            adj[b].sort()
        return adj

    def is_tree(self) -> bool:
        if not self.bags:
            return not self.tree
        if len(self.tree) != len(self.bags) - 1:
            return False
        adj = self.neighbors()
        start = min(self.bags)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.bags)

    def path_order(self) -> list | None:
        """Bag ids in path order if the tree is a path, else None."""
        if not self.is_tree():
            return None
        adj = self.neighbors()
        if any(len(a) > 2 for a in adj.values()):
            return None
        if len(self.bags) == 1:
            return list(self.bags)
        ends = sorted(b for b, a in adj.items() if len(a) == 1)
        order = [ends[0]]
        prev = None
        while len(order) < len(self.bags):
            cur = order[-1]
            nxt = [b for b in adj[cur] if b != prev][0]
            prev = cur
            order.append(nxt)
        return order


def parse_td(text: str) -> tuple[TreeDecomposition, int]:
    """Parse a PACE 2017 ``.td`` file; returns the decomposition and the vertex count."""
    header = None
    bags = {}
    tree = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "s":
                if header is not None:
                    raise ParseError("duplicate solution line", lineno)
                if len(parts) != 5 or parts[1] != "td":
                    raise ParseError("expected 's td <bags> <width+1> <n>'", lineno)
                header = tuple(int(x) for x in parts[2:])
            elif parts[0] == "b":
                if header is None:
                    raise ParseError("bag before solution line", lineno)
                if len(parts) < 2:
                    raise ParseError("bag line without id", lineno)
                bid = int(parts[1])
                if not 1 <= bid <= header[0]:
                    raise RangeError(f"bag id {bid} outside [1, {header[0]}]", lineno)
                if bid in bags:
                    raise ParseError(f"bag {bid} defined twice", lineno)
                verts = [int(x) for x in parts[2:]]
                for v in verts:
                    if not 1 <= v <= header[2]:
                        raise RangeError(f"vertex {v} outside [1, {header[2]}]", lineno)
                bags[bid] = frozenset(v - 1 for v in verts)
            else:
                if header is None:
                    raise ParseError("tree edge before solution line", lineno)
                if len(parts) != 2:
                    raise ParseError(f"unrecognized line {raw.strip()!r}", lineno)
                a, b = int(parts[0]), int(parts[1])
                for x in (a, b):
                    if not 1 <= x <= header[0]:
                        raise RangeError(f"bag id {x} outside [1, {header[0]}]", lineno)
                tree.append((a, b))
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"non-integer field in {raw.strip()!r}", lineno) from None
    if header is None:
        raise ParseError("missing solution line")
    nbags, size, n = header
    missing = [b for b in range(1, nbags + 1) if b not in bags]
    if missing:
        raise ParseError(f"bag {missing[0]} has no 'b' line")
    td = TreeDecomposition(bags, tuple(tree))
    if nbags and td.width + 1 != size:
        raise DecompositionError(f"declared bag size {size} but largest bag has {td.width + 1}")
    return td, n


def serialize_td(td: TreeDecomposition, n: int) -> str:
    ids = sorted(td.bags)
    renum = {b: i + 1 for i, b in enumerate(ids)}
    lines = [f"s td {len(ids)} {td.width + 1 if ids else 0} {n}"]
    for b in ids:
        verts = " ".join(str(v + 1) for v in sorted(td.bags[b]))
        lines.append(f"b {renum[b]} {verts}".rstrip())
    lines.extend(f"{renum[a]} {renum[b]}" for a, b in td.tree)
    return "\n".join(lines) + "\n"


def validate_td(g: Graph, td: TreeDecomposition) -> Verdict:
    """Check the three decomposition axioms against ``g``; names the first failure."""
    if not td.bags:
        return Verdict(g.n == 0, "no bags" if g.n else "ok")
    for a, b in td.tree:
        if a not in td.bags or b not in td.bags:
            return Verdict(False, f"tree edge ({a}, {b}) references an unknown bag")
    if not td.is_tree():
        return Verdict(False, "bag graph is not a tree")
    for s in td.bags.values():
        bad = [v for v in s if not 0 <= v < g.n]
        if bad:
            return Verdict(False, f"bag contains unknown vertex {min(bad) + 1}")
    where: dict[int, list] = {v: [] for v in range(g.n)}
    for b, s in td.bags.items():
        for v in s:
            where[v].append(b)
    for v in range(g.n):
        if not where[v]:
            return Verdict(False, f"vertex {v + 1} is in no bag", v)
    for u, v in g.sorted_edges():
        if not set(where[u]) & set(where[v]):
            return Verdict(False, f"edge ({u + 1}, {v + 1}) is covered by no bag")
    adj = td.neighbors()
    for v in range(g.n):
        holders = set(where[v])
        start = where[v][0]
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in holders and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != holders:
            return Verdict(False, f"bags containing vertex {v + 1} are not connected", v)
    return Verdict(True, "ok")


# ---------------------------------------------------------------------------
# nice decompositions

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: frozenset
    vertex: int | None = None
    children: tuple = ()


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Nodes in post-order (children before parents); the last node is the root."""

    nodes: tuple
    width: int = field(default=-1)

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    def flatten(self) -> TreeDecomposition:
        bags = {i: node.bag for i, node in enumerate(self.nodes)}
        tree = [(c, i) for i, node in enumerate(self.nodes) for c in node.children]
        return TreeDecomposition(bags, tuple(tree))

    def check_shape(self) -> None:
        for i, node in enumerate(self.nodes):
            kids = [self.nodes[c] for c in node.children]
            if any(c >= i for c in node.children):
                raise DecompositionError(f"node {i} is not in post-order")
            if node.kind == LEAF:
                ok = not kids and not node.bag
            elif node.kind == INTRODUCE:
                ok = len(kids) == 1 and node.vertex in node.bag and kids[0].bag == node.bag - {node.vertex}
            elif node.kind == FORGET:
                ok = len(kids) == 1 and node.vertex not in node.bag and kids[0].bag == node.bag | {node.vertex}
            elif node.kind == JOIN:
                ok = len(kids) == 2 and all(k.bag == node.bag for k in kids)
            else:
                ok = False
            if not ok:
                raise DecompositionError(f"node {i} ({node.kind}) violates the nice shape")


def make_nice(td: TreeDecomposition, root=None) -> NiceTreeDecomposition:
    """Convert to nice form rooted at ``root`` (default: smallest bag id).

    The root keeps its original bag; the DP forgets it at the end.
    """
    if not td.bags:
        return NiceTreeDecomposition((NiceNode(LEAF, frozenset()),), -1)
    if not td.is_tree():
        raise DecompositionError("bag graph is not a tree")
    adj = td.neighbors()
    root = min(td.bags) if root is None else root
    nodes: list[NiceNode] = []

    def push(node: NiceNode) -> int:
        nodes.append(node)
        return len(nodes) - 1

    def chain_from(idx: int, current: frozenset, target: frozenset) -> int:
        for v in sorted(current - target):
            current = current - {v}
            idx = push(NiceNode(FORGET, current, v, (idx,)))
        for v in sorted(target - current):
            current = current | {v}
            idx = push(NiceNode(INTRODUCE, current, v, (idx,)))
        return idx

    # iterative post-order over the bag tree
    parent = {root: None}
    order = []
    stack = [root]
    while stack:
        x = stack.pop()
        order.append(x)
        for y in reversed(adj[x]):
            if y != parent[x]:
                parent[y] = x
                stack.append(y)
    top: dict = {}
    for x in reversed(order):
        bag = td.bags[x]
        kids = [y for y in adj[x] if y != parent[x]]
        if not kids:
            leaf = push(NiceNode(LEAF, frozenset()))
            top[x] = chain_from(leaf, frozenset(), bag)
            continue
        branches = [chain_from(top[y], td.bags[y], bag) for y in kids]
        cur = branches[0]
        for other in branches[1:]:
            cur = push(NiceNode(JOIN, bag, None, (cur, other)))
        top[x] = cur
    # drop nodes not reachable from the final root (none expected) and reindex
    return NiceTreeDecomposition(tuple(nodes), td.width)


# ---------------------------------------------------------------------------
# elimination-based decompositions


def elimination_td(g: Graph, order: Sequence[int], contract: bool = True) -> TreeDecomposition:
    """Decomposition induced by eliminating vertices in ``order``.

    Each vertex gets the bag {v} plus its neighbours at elimination time
    (fill edges included); its parent is the earliest-eliminated of those
    neighbours. Roots of separate components are chained.
    """
    pos = {v: i for i, v in enumerate(order)}
    if sorted(pos) != list(range(g.n)):
        raise DecompositionError("elimination order is not a permutation")
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    bags = {}
    parent = {}
    for v in order:
        later = adj[v]
        bags[v] = frozenset(later | {v})
        parent[v] = min(later, key=pos.__getitem__) if later else None
        for a in later:
            adj[a].discard(v)
            adj[a] |= later - {a}
    if g.n == 0:
        return TreeDecomposition({0: frozenset()}, ())
    tree = [(v, p) for v, p in parent.items() if p is not None]
    roots = sorted((v for v, p in parent.items() if p is None), key=pos.__getitem__)
    tree.extend(zip(roots, roots[1:]))
    td = TreeDecomposition(bags, tuple(tree))
    return contract_subset_bags(td) if contract else td


def contract_subset_bags(td: TreeDecomposition) -> TreeDecomposition:
    """Merge every bag into an adjacent bag that contains it."""
    bags = dict(td.bags)
    adj = {b: set() for b in bags}
    for a, b in td.tree:
        adj[a].add(b)
        adj[b].add(a)
    changed = True
    while changed:
        changed = False
        for x in sorted(bags):
            for y in sorted(adj[x]):
                if bags[x] <= bags[y]:
                    for z in adj[x]:
                        if z != y:
                            adj[z].discard(x)
                            adj[z].add(y)
                            adj[y].add(z)
                    adj[y].discard(x)
                    del adj[x]
                    del bags[x]
                    changed = True
                    break
            if changed:
                break
    tree = sorted({tuple(sorted((a, b))) for a in adj for b in adj[a]})
    return TreeDecomposition(bags, tuple(tree))


def min_fill_order(g: Graph) -> list[int]:
    """Greedy min-fill elimination order, ties to the lowest vertex id."""
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    alive = set(range(g.n))
    order = []
    while alive:
        best, best_fill = None, None
        for v in sorted(alive):
            nb = sorted(adj[v])
            fill = 0
            for i, a in enumerate(nb):
                for b in nb[i + 1:]:
                    if b not in adj[a]:
                        fill += 1
            if best_fill is None or fill < best_fill:
                best, best_fill = v, fill
                if fill == 0:
                    break
        v = best
        nb = adj[v]
        for a in nb:
            adj[a].discard(v)
            adj[a] |= nb - {a}
        alive.discard(v)
        adj[v] = set()
        order.append(v)
    return order


def min_fill_td(g: Graph) -> TreeDecomposition:
    return elimination_td(g, min_fill_order(g))


def single_bag_td(g: Graph) -> TreeDecomposition:
    return TreeDecomposition({0: frozenset(range(g.n))}, ())


def path_decomposition_from_order(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Path decomposition from a linear layout.

    Bag i holds order[i] plus every earlier vertex that still has a
    neighbour at position i or later.
    """
    pos = {v: i for i, v in enumerate(order)}
    if sorted(pos) != list(range(g.n)):
        raise DecompositionError("layout is not a permutation")
    if g.n == 0:
        return TreeDecomposition({0: frozenset()}, ())
    last = {v: max([pos[v]] + [pos[u] for u in g.neighbors(v)]) for v in range(g.n)}
    bags = {}
    active: set = set()
    for i, v in enumerate(order):
        active.add(v)
        bags[i] = frozenset(active)
        active = {u for u in active if last[u] > i}
    tree = tuple((i, i + 1) for i in range(g.n - 1))
    return TreeDecomposition(bags, tree)


def greedy_layout(g: Graph) -> list[int]:
    """Linear layout that greedily keeps the active frontier small."""
    placed: list[int] = []
    inside: set = set()
    remaining = set(range(g.n))
    nbrs = [set(g.neighbors(v)) for v in range(g.n)]

    def frontier_after(v):
        s = inside | {v}
        return sum(1 for u in s if nbrs[u] - s)

    while remaining:
        v = min(remaining, key=lambda x: (frontier_after(x), -len(nbrs[x] & inside), x))
        placed.append(v)
        inside.add(v)
        remaining.discard(v)
    return placed


def greedy_path_decomposition(g: Graph) -> TreeDecomposition:
    return path_decomposition_from_order(g, greedy_layout(g))


def bags_of(td: TreeDecomposition) -> Iterable[frozenset]:
    return td.bags.values()
