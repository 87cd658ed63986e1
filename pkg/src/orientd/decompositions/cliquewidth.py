"""Clique-width expressions: text format, evaluation, construction helpers.

An expression is stored as a postfix program over a term stack:

    Introduce(label, vertex)  push a single vertex with that label
    Union()                   pop two terms, push their disjoint union
    Join(i, j)                connect every label-i vertex to every label-j vertex
    Relabel(i, j)             rename label i to j

Labels are positive integers. Vertex ids default to introduction order.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DecompositionError, ParseError, RangeError
from ..graph import Graph
from .treedecomp import TreeDecomposition


@dataclass(frozen=True)
class Introduce:
    label: int
    vertex: int


@dataclass(frozen=True)
class Union:
    pass


@dataclass(frozen=True)
class Join:
    i: int
    j: int


@dataclass(frozen=True)
class Relabel:
    i: int
    j: int


@dataclass(frozen=True)
class CliquewidthExpression:
    ops: tuple

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        _check_program(self.ops)

    @property
    def label_count(self) -> int:
        labels = set()
        for op in self.ops:
            if isinstance(op, Introduce):
                labels.add(op.label)
            elif isinstance(op, (Join, Relabel)):
                labels.update((op.i, op.j))
        return len(labels)

    @property
    def max_label(self) -> int:
        best = 0
        for op in self.ops:
            if isinstance(op, Introduce):
                best = max(best, op.label)
            elif isinstance(op, (Join, Relabel)):
                best = max(best, op.i, op.j)
        return best

    @property
    def n(self) -> int:
        return sum(1 for op in self.ops if isinstance(op, Introduce))


def _check_program(ops) -> None:
    depth = 0
    seen_vertices = set()
    for idx, op in enumerate(ops, 1):
        if isinstance(op, Introduce):
            if op.label < 1:
                raise RangeError(f"operation {idx}: label {op.label} must be positive")
            if op.vertex in seen_vertices:
                raise DecompositionError(f"operation {idx}: vertex {op.vertex} introduced twice")
            seen_vertices.add(op.vertex)
            depth += 1
        elif isinstance(op, Union):
            if depth < 2:
                raise DecompositionError(f"operation {idx}: union needs two terms")
            depth -= 1
        elif isinstance(op, (Join, Relabel)):
            if op.i < 1 or op.j < 1:
                raise RangeError(f"operation {idx}: labels must be positive")
            if isinstance(op, Join) and op.i == op.j:
                raise DecompositionError(f"operation {idx}: join of label {op.i} with itself")
            if depth < 1:
                raise DecompositionError(f"operation {idx}: no term to operate on")
        else:
            raise DecompositionError(f"operation {idx}: unknown operation {op!r}")
    if ops and depth != 1:
        raise DecompositionError(f"expression leaves {depth} dangling terms")
    if seen_vertices and sorted(seen_vertices) != list(range(len(seen_vertices))):
        raise DecompositionError("introduced vertex ids are not 0..n-1")


def parse_cw_expression(text: str) -> CliquewidthExpression:
    ops = []
    explicit = None
    next_vertex = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag, args = parts[0], parts[1:]
        try:
            nums = [int(a) for a in args]
        except ValueError:
            raise ParseError(f"non-integer argument in {raw.strip()!r}", lineno) from None
        if tag == "v":
            if len(nums) not in (1, 2):
                raise ParseError("introduce takes a label and an optional vertex", lineno)
            has_id = len(nums) == 2
            if explicit is None:
                explicit = has_id
            elif explicit != has_id:
                raise ParseError("either every introduce names its vertex or none does", lineno)
            if nums[0] < 1:
                raise RangeError(f"label {nums[0]} must be positive", lineno)
            if has_id:
                if nums[1] < 1:
                    raise RangeError(f"vertex {nums[1]} must be positive", lineno)
                vertex = nums[1] - 1
            else:
                vertex = next_vertex
                next_vertex += 1
            ops.append(Introduce(nums[0], vertex))
        elif tag == "u":
            if nums:
                raise ParseError("union takes no arguments", lineno)
            ops.append(Union())
        elif tag in ("j", "r"):
            if len(nums) != 2:
                raise ParseError(f"'{tag}' takes two labels", lineno)
            if min(nums) < 1:
                raise RangeError("labels must be positive", lineno)
            if tag == "j":
                if nums[0] == nums[1]:
                    raise ParseError(f"join of label {nums[0]} with itself", lineno)
                ops.append(Join(*nums))
            else:
                ops.append(Relabel(*nums))
        else:
            raise ParseError(f"unknown operation {tag!r}", lineno)
    return CliquewidthExpression(tuple(ops))


def serialize_cw_expression(expr: CliquewidthExpression, explicit_ids: bool | None = None) -> str:
    """Text form; vertex ids are written only when they differ from introduction order."""
    if explicit_ids is None:
        intro = [op.vertex for op in expr.ops if isinstance(op, Introduce)]
        explicit_ids = intro != list(range(len(intro)))
    lines = []
    for op in expr.ops:
        if isinstance(op, Introduce):
            lines.append(f"v {op.label} {op.vertex + 1}" if explicit_ids else f"v {op.label}")
        elif isinstance(op, Union):
            lines.append("u")
        elif isinstance(op, Join):
            lines.append(f"j {op.i} {op.j}")
        else:
            lines.append(f"r {op.i} {op.j}")
    return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    labels: tuple


def eval_cw_expression(expr: CliquewidthExpression) -> LabeledGraph:
    """Build the labeled graph bottom-up; joins never create parallel edges."""
    n = expr.n
    edges = set()
    stack: list[dict] = []
    for op in expr.ops:
        if isinstance(op, Introduce):
            stack.append({op.label: [op.vertex]})
        elif isinstance(op, Union):
            b = stack.pop()
            a = stack.pop()
            if len(a) < len(b):
                a, b = b, a
            for lab, vs in b.items():
                a.setdefault(lab, []).extend(vs)
            stack.append(a)
        elif isinstance(op, Join):
            term = stack[-1]
            for u in term.get(op.i, ()):
                for v in term.get(op.j, ()):
                    edges.add((u, v) if u < v else (v, u))
        else:
            term = stack[-1]
            if op.i != op.j and op.i in term:
                term.setdefault(op.j, []).extend(term.pop(op.i))
    labels = [0] * n
    if stack:
        for lab, vs in stack[-1].items():
            for v in vs:
                labels[v] = lab
    return LabeledGraph(Graph(n, frozenset(edges)), tuple(labels))


class ExpressionBuilder:
    """Incremental postfix builder used by the generators."""

    def __init__(self):
        self.ops: list = []
        self.next_vertex = 0
        self.depth = 0

    def introduce(self, label: int, vertex: int | None = None) -> int:
        if vertex is None:
            vertex = self.next_vertex
        self.next_vertex = max(self.next_vertex, vertex + 1)
        self.ops.append(Introduce(label, vertex))
        self.depth += 1
        return vertex

    def union(self) -> None:
        self.ops.append(Union())
        self.depth -= 1

    def join(self, i: int, j: int) -> None:
        self.ops.append(Join(i, j))

    def relabel(self, i: int, j: int) -> None:
        if i != j:
            self.ops.append(Relabel(i, j))

    def add(self, label: int, vertex: int | None = None) -> int:
        """Introduce a vertex and merge it into the current term."""
        v = self.introduce(label, vertex)
        if self.depth > 1:
            self.union()
        return v

    def build(self) -> CliquewidthExpression:
        return CliquewidthExpression(tuple(self.ops))


def cw_from_path_decomposition(g: Graph, pd: TreeDecomposition) -> CliquewidthExpression:
    """Sweep a path decomposition, one private label per active slot.

    Label 1 holds retired vertices and labels 2..width+2 are slots, so at
    most width+2 labels are used. Every join adds exactly one edge.
    """
    order = pd.path_order()
    if order is None:
        raise DecompositionError("decomposition is not path-shaped")
    b = ExpressionBuilder()
    slot_of: dict[int, int] = {}
    free = list(range(pd.width + 2, 1, -1))
    dirty: set = set()
    done: set = set()
    prev: frozenset = frozenset()
    for bid in order:
        bag = pd.bags[bid]
        for v in sorted(prev - bag):
            s = slot_of.pop(v)
            dirty.add(s)
            free.append(s)
            free.sort(reverse=True)
            done.add(v)
        for v in sorted(bag - prev):
            if v in done or v in slot_of:
                raise DecompositionError(f"vertex {v + 1} reappears after being forgotten")
            s = free.pop()
            if s in dirty:
                if g.m:
                    b.relabel(s, 1)
                dirty.discard(s)
            b.add(s, v)
            slot_of[v] = s
            for u in g.neighbors(v):
                if u in slot_of and u != v:
                    b.join(s, slot_of[u])
                elif u in done:
                    raise DecompositionError(f"edge ({u + 1}, {v + 1}) is covered by no bag")
        prev = bag
    if len(slot_of) + len(done) != g.n:
        raise DecompositionError("some vertex is in no bag")
    return b.build()


def random_cw_expression(n: int, labels: int, seed: int, join_probability: float = 0.5,
                         relabel_probability: float = 0.3) -> CliquewidthExpression:
    """Random expression with irredundant joins and shared labels.

    Terms are merged in random order; after each union a few joins and
    relabels are applied. A join is emitted only when no edge runs between
    the two labels yet, so every join adds all of its edges.
    """
    import random

    if n < 1 or labels < 2:
        raise DecompositionError("need at least one vertex and two labels")
    rng = random.Random(seed)
    # each pending term: (ops, {label: set(vertices)}, adjacency pairs)
    terms = []
    for v in range(n):
        lab = rng.randint(1, labels)
        terms.append(([Introduce(lab, v)], {lab: {v}}))
    edges: set = set()
    while len(terms) > 1:
        a = terms.pop(rng.randrange(len(terms)))
        b = terms.pop(rng.randrange(len(terms)))
        ops = a[0] + b[0] + [Union()]
        members = {k: set(s) for k, s in a[1].items()}
        for k, s in b[1].items():
            members.setdefault(k, set()).update(s)
        for _ in range(2):
            if rng.random() < join_probability:
                i, j = rng.sample(range(1, labels + 1), 2)
                li, lj = members.get(i, set()), members.get(j, set())
                if li and lj and not any((min(x, y), max(x, y)) in edges for x in li for y in lj):
                    ops.append(Join(i, j))
                    edges.update((min(x, y), max(x, y)) for x in li for y in lj)
            if rng.random() < relabel_probability:
                i, j = rng.sample(range(1, labels + 1), 2)
                if i in members:
                    ops.append(Relabel(i, j))
                    members.setdefault(j, set()).update(members.pop(i))
        terms.append((ops, members))
    return CliquewidthExpression(tuple(terms[0][0]))
