"""Construction from multicolored independent set, with its cw-expression.

Part i contributes A_i and B_i (n capacity-0 vertices each) and a guard
set W_i of capacity-n vertices complete to A_i and B_i. An edge
e = (v_i^l, v_j^h) contributes a quadruple a_l, b_l, a_h, b_h, pairwise
OR-linked, with a_l complete to A_i, b_l to B_i, a_h to A_j, b_h to B_j
and capacities n-l-1, l-1, n-h-1, h-1. The bound is d = n.

Vertex ids follow creation order: for each part A_i, B_i, W_i; then for
each edge its quadruple followed by its six OR gadgets. The expression
introduces vertices in the same order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..decompositions.cliquewidth import CliquewidthExpression, ExpressionBuilder
from ..errors import ParseError, RangeError, ValidationError
from ..graph import CapacitatedInstance
from ..orientation import residual_orientation
from .basic import InstanceBuilder

QUAD_PAIRS = tuple(combinations(range(4), 2))


@dataclass(frozen=True)
class MulticoloredISInstance:
    """k parts of n vertices each; vertex (i, l) is the l-th (1-based) of part i (1-based)."""

    k: int
    n: int
    edges: tuple  # ((i, l), (j, h)) with i < j

    def __post_init__(self):
        if self.k < 1 or self.n < 1:
            raise ValidationError("need k >= 1 parts of n >= 1 vertices")
        norm = set()
        for e in self.edges:
            (i, l), (j, h) = sorted(e)
            for part, idx in ((i, l), (j, h)):
                if not (1 <= part <= self.k and 1 <= idx <= self.n):
                    raise ValidationError(f"vertex ({part}, {idx}) out of range")
            if i == j:
                raise ValidationError(f"edge inside part {i}: part cliques are implicit")
            norm.add(((i, l), (j, h)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    def is_independent(self, selection) -> tuple | None:
        """None if the selection (one index per part) is independent, else an offending edge."""
        chosen = {(i + 1, l) for i, l in enumerate(selection)}
        for e in self.edges:
            if e[0] in chosen and e[1] in chosen:
                return e
        return None


def parse_mcis(text: str) -> MulticoloredISInstance:
    """``p mcis <k> <n>`` header, then ``e u v`` with global ids (i-1)*n + l."""
    k = n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            nums = [int(x) for x in parts[1:] if x != "mcis"]
        except ValueError:
            raise ParseError(f"non-integer field in {raw.strip()!r}", lineno) from None
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "mcis":
                raise ParseError("header must read 'p mcis <k> <n>'", lineno)
            k, n = nums
        elif parts[0] == "e":
            if k is None:
                raise ParseError("edge before header", lineno)
            if len(nums) != 2:
                raise ParseError("edge lines take two vertex ids", lineno)
            pair = []
            for x in nums:
                if not 1 <= x <= k * n:
                    raise RangeError(f"vertex {x} outside [1, {k * n}]", lineno)
                pair.append(((x - 1) // n + 1, (x - 1) % n + 1))
            if pair[0][0] == pair[1][0]:
                raise ValidationError(f"line {lineno}: edge inside one part")
            edges.append(tuple(pair))
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", lineno)
    if k is None:
        raise ParseError("missing 'p mcis' header")
    return MulticoloredISInstance(k, n, tuple(edges))


def serialize_mcis(mc: MulticoloredISInstance) -> str:
    lines = [f"p mcis {mc.k} {mc.n}"]
    for (i, l), (j, h) in mc.edges:
        lines.append(f"e {(i - 1) * mc.n + l} {(j - 1) * mc.n + h}")
    return "\n".join(lines) + "\n"


@dataclass
class CwHardnessLayout:
    mc: MulticoloredISInstance
    guard_size: int
    conforming: bool
    A: dict  # part -> tuple ids
    B: dict
    W: dict
    quads: dict  # edge -> (a_l, b_l, a_h, b_h)
    or_internal: tuple
    target_k: int
    labels_used: int

    def roles(self) -> dict:
        r = {}
        for i in sorted(self.A):
            r[f"A_{i}"] = self.A[i]
            r[f"B_{i}"] = self.B[i]
            r[f"W_{i}"] = self.W[i]
        for idx, e in enumerate(self.mc.edges):
            for name, v in zip(("a_l", "b_l", "a_h", "b_h"), self.quads[e]):
                r[f"e{idx + 1}.{name}"] = v
        r["or_internal"] = self.or_internal
        return r


def _quad_caps(n: int, l: int, h: int) -> tuple:
    # n-l-1 is -1 when l = n; such a vertex is never kept by a witness
    return (max(0, n - l - 1), l - 1, max(0, n - h - 1), h - 1)


def cw_hardness_instance(mc: MulticoloredISInstance, truncated: bool = False):
    """Returns (instance, target_k, expression, layout).

    ``truncated`` shrinks each guard set to 2n+1 vertices (a nonconforming
    variant small enough for exact cross-checks).
    """
    k, n = mc.k, mc.n
    m = len(mc.edges)
    guard = 2 * n + 1 if truncated else k * n + 3 * m + 1
    bld = InstanceBuilder(n)
    A, B, W = {}, {}, {}
    for i in range(1, k + 1):
        A[i] = tuple(bld.vertices(n, 0))
        B[i] = tuple(bld.vertices(n, 0))
        W[i] = tuple(bld.vertices(guard, n))
        bld.biclique(W[i], A[i] + B[i])
    quads = {}
    for e in mc.edges:
        (i, l), (j, h) = e
        caps = _quad_caps(n, l, h)
        q = tuple(bld.vertex(c) for c in caps)
        bld.biclique([q[0]], A[i])
        bld.biclique([q[1]], B[i])
        bld.biclique([q[2]], A[j])
        bld.biclique([q[3]], B[j])
        for s, t in QUAD_PAIRS:
            bld.or_gadget(q[s], q[t])
        quads[e] = q
    target = k * n + 3 * m
    inst = bld.build(target)
    expr, labels = cw_hardness_expression(mc, guard)
    layout = CwHardnessLayout(mc, guard, not truncated, A, B, W, quads,
                              tuple(bld.or_internal), target, labels)
    return inst, target, expr, layout


def cw_hardness_expression(mc: MulticoloredISInstance, guard: int) -> tuple[CliquewidthExpression, int]:
    """Expression with 2k part labels plus seven shared ones.

    Labels 2i-1 and 2i hold A_i and B_i; then a junk label for finished
    vertices, one for the current guard set, four for the current
    quadruple and one for the current OR gadget.
    """
    k, n = mc.k, mc.n
    junk = 2 * k + 1
    work_w = 2 * k + 2
    quad = [2 * k + 3 + s for s in range(4)]
    work_or = 2 * k + 7
    ex = ExpressionBuilder()
    for i in range(1, k + 1):
        la, lb = 2 * i - 1, 2 * i
        for _ in range(n):
            ex.add(la)
        for _ in range(n):
            ex.add(lb)
        for _ in range(guard):
            ex.add(work_w)
        ex.join(work_w, la)
        ex.join(work_w, lb)
        ex.relabel(work_w, junk)
    for (i, l), (j, h) in mc.edges:
        for s in range(4):
            ex.add(quad[s])
        ex.join(quad[0], 2 * i - 1)
        ex.join(quad[1], 2 * i)
        ex.join(quad[2], 2 * j - 1)
        ex.join(quad[3], 2 * j)
        for s, t in QUAD_PAIRS:
            for _ in range(2 * n + 2):
                ex.add(work_or)
            ex.join(work_or, quad[s])
            ex.join(work_or, quad[t])
            ex.relabel(work_or, junk)
        for s in range(4):
            ex.relabel(quad[s], junk)
    expr = ex.build()
    return expr, expr.label_count


def cw_hardness_witness(source, selection) -> frozenset:
    """Deletion set of size kn + 3|E| for an independent selection (1-based index per part).

    ``source`` is a layout or the multicolored instance itself.
    """
    layout = source if isinstance(source, CwHardnessLayout) else cw_hardness_instance(source)[3]
    mc = layout.mc
    n = mc.n
    selection = tuple(selection)
    if len(selection) != mc.k or any(not 1 <= s <= n for s in selection):
        raise ValidationError(f"selection must pick one index in [1, {n}] per part")
    clash = mc.is_independent(selection)
    if clash is not None:
        (i, l), (j, h) = clash
        raise ValidationError(f"selection is not independent: edge ({i},{l})-({j},{h})")
    deleted = set()
    for i, li in enumerate(selection, 1):
        deleted |= set(layout.A[i][:li])
        deleted |= set(layout.B[i][: n - li])
    for e, q in layout.quads.items():
        (i, l), (j, h) = e
        li, lj = selection[i - 1], selection[j - 1]
        if l != li:
            keep = q[1] if l > li else q[0]
        else:
            keep = q[3] if h > lj else q[2]
        deleted |= set(q) - {keep}
    return frozenset(deleted)


def witness_orientation(inst: CapacitatedInstance, deleted):
    return residual_orientation(inst.with_budget(None), deleted)
