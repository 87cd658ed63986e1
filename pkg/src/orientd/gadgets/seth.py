"""Column construction from a CNF formula, with a witness builder.

Variables are split into t groups of at most gamma variables, where
2^gamma <= (d+2)^p. Every column holds, per group, a clique U of (d+2)^p
capacity-0 vertices and p block gadgets; blocks in the same row are
chained through a' = next a. Each U vertex stands for one option tuple of
its p blocks and is OR-linked to every W/Z vertex that disagrees with it.
Each column also carries the clause gadget of one clause, whose inputs
are OR-linked to the U vertices that falsify the input's literal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from ..errors import ParseError, ValidationError
from ..orientation import Orientation
from .basic import InstanceBuilder, add_block_gadget, add_clause_gadget


@dataclass(frozen=True)
class SethParams:
    n: int
    m: int
    d: int
    p: int
    gamma: int
    t: int
    sections: int
    q: tuple  # padded literal counts per clause

    @property
    def columns(self) -> int:
        return self.sections * self.m


def parse_cnf(text: str) -> list[tuple]:
    """DIMACS CNF: ``p cnf <vars> <clauses>``, clauses terminated by 0."""
    clauses, current = [], []
    header = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] in ("c", "%"):
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("header must read 'p cnf <vars> <clauses>'", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError("non-integer header field", lineno) from None
            continue
        if header is None:
            raise ParseError("clause before header", lineno)
        for tok in parts:
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno) from None
            if abs(lit) > header[0]:
                raise ParseError(f"literal {lit} exceeds {header[0]} variables", lineno)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        clauses.append(tuple(current))
    return clauses


def serialize_cnf(clauses) -> str:
    n = max((abs(x) for c in clauses for x in c), default=0)
    lines = [f"p cnf {n} {len(clauses)}"]
    lines += [" ".join(str(x) for x in c) + " 0" for c in clauses]
    return "\n".join(lines) + "\n"


def group_size(d: int, p: int) -> int:
    """Largest gamma with 2^gamma <= (d+2)^p."""
    base = (d + 2) ** p
    g = 0
    while 2 ** (g + 1) <= base:
        g += 1
    return g


def option_tuples(d: int, p: int) -> list[tuple]:
    """All option tuples; those avoiding option d+1 come first.

    Option d+1 deletes a' as well, so assignments are mapped to tuples
    without it whenever there are enough of them.
    """
    tuples = list(product(range(d + 2), repeat=p))
    return sorted(tuples, key=lambda tup: (any(o == d + 1 for o in tup), tup))


@dataclass
class SethLayout:
    params: SethParams
    clauses: tuple  # padded clauses, tuples of DIMACS literals
    groups: tuple  # tuple of variable tuples (1-based variables)
    options: tuple  # option tuple per U index
    U: dict = field(default_factory=dict)  # (tau, l) -> tuple of vertex ids
    blocks: dict = field(default_factory=dict)  # (tau, l, pi) -> BlockParts
    clause_parts: dict = field(default_factory=dict)  # l -> ClauseParts
    or_internal: tuple = ()
    target_k: int = 0
    edges: tuple = ()
    n_vertices: int = 0

    def group_of(self, var: int) -> int:
        return (var - 1) // self.params.gamma

    def roles(self) -> dict:
        r = {}
        for (tau, l), vs in sorted(self.U.items()):
            r[f"U[{tau + 1}][{l + 1}]"] = vs
        for (tau, l, pi), bp in sorted(self.blocks.items()):
            r.update(bp.roles(f"B[{tau + 1}][{l + 1}][{pi + 1}]."))
        for l, cp in sorted(self.clause_parts.items()):
            for i, v in enumerate(cp.inputs):
                r[f"C[{l + 1}].input_{i + 1}"] = v
            r[f"C[{l + 1}].left"] = cp.left
            r[f"C[{l + 1}].right"] = cp.right
            r[f"C[{l + 1}].pendants"] = (cp.pendant_first, cp.pendant_last)
        r["or_internal"] = self.or_internal
        return r


def _assignment_index(layout: SethLayout, tau: int, assignment: dict) -> int:
    idx = 0
    for bit, var in enumerate(layout.groups[tau]):
        if assignment[var]:
            idx |= 1 << bit
    return idx


def _satisfies(layout: SethLayout, tau: int, u_index: int, literal: int) -> bool | None:
    """Does the assignment of U vertex ``u_index`` satisfy ``literal``? None if unassociated."""
    group = layout.groups[tau]
    if u_index >= 2 ** len(group):
        return None
    var = abs(literal)
    bit = group.index(var)
    value = bool(u_index >> bit & 1)
    return value if literal > 0 else not value


def seth_instance(clauses: Sequence[Sequence[int]], d: int, p: int, sections: int | None = None):
    """Build the instance; returns (instance, target_k, layout)."""
    if d < 1 or p < 1:
        raise ValidationError("need d >= 1 and p >= 1")
    clauses = [tuple(c) for c in clauses]
    if not clauses or any(not c for c in clauses):
        raise ValidationError("formula must have at least one clause and no empty clause")
    variables = sorted({abs(x) for c in clauses for x in c})
    n = max(variables)
    if variables != list(range(1, n + 1)):
        missing = sorted(set(range(1, n + 1)) - set(variables))
        raise ValidationError(f"variable {missing[0]} appears in no clause")
    padded = tuple(c if len(c) % 2 == 0 else c + (c[0],) for c in clauses)
    m = len(clauses)
    gamma = group_size(d, p)
    t = -(-n // gamma)
    sections = t * p * d + 2 if sections is None else sections
    if sections < 1:
        raise ValidationError("need at least one column section")
    params = SethParams(n, m, d, p, gamma, t, sections, tuple(len(c) for c in padded))
    groups = tuple(tuple(range(tau * gamma + 1, min(n, (tau + 1) * gamma) + 1)) for tau in range(t))
    layout = SethLayout(params, padded, groups, tuple(option_tuples(d, p)))
    size_u = (d + 2) ** p

    b = InstanceBuilder(d)
    prev_a_prime: dict = {}
    for l in range(params.columns):
        mu = l % m
        for tau in range(t):
            us = b.vertices(size_u, 0)
            b.clique(us)
            layout.U[(tau, l)] = tuple(us)
            for pi in range(p):
                bp = add_block_gadget(b, prev_a_prime.get((tau, pi)))
                prev_a_prime[(tau, pi)] = bp.a_prime
                layout.blocks[(tau, l, pi)] = bp
            for i, u in enumerate(us):
                opts = layout.options[i]
                for pi in range(p):
                    bp = layout.blocks[(tau, l, pi)]
                    for j in range(d + 2):
                        if j != opts[pi]:
                            b.or_gadget(u, bp.w[j])
                            b.or_gadget(u, bp.z[j])
        cp = add_clause_gadget(b, len(padded[mu]))
        layout.clause_parts[l] = cp
        for inp, lit in zip(cp.inputs, padded[mu]):
            tau = layout.group_of(abs(lit))
            for i, u in enumerate(layout.U[(tau, l)]):
                if _satisfies(layout, tau, i, lit) is not True:
                    b.or_gadget(inp, u)
    layout.or_internal = tuple(b.or_internal)
    per_column = [2 * q + t * (3 * p * (d + 1) + size_u - 1) for q in params.q]
    layout.target_k = sections * sum(per_column)
    inst = b.build(layout.target_k)
    layout.edges = tuple(inst.graph.sorted_edges())
    layout.n_vertices = inst.n
    return inst, layout.target_k, layout


def _unsatisfied_clause(clauses, assignment) -> int | None:
    for idx, c in enumerate(clauses):
        if not any(assignment[abs(x)] == (x > 0) for x in c):
            return idx
    return None


def seth_witness(layout: SethLayout, assignment) -> tuple[frozenset, Orientation]:
    """Deletion set and orientation for a satisfying assignment.

    ``assignment`` maps variable -> bool (or is a sequence indexed from 1).
    """
    params = layout.params
    if not isinstance(assignment, dict):
        assignment = {i + 1: bool(v) for i, v in enumerate(assignment)}
    for var in range(1, params.n + 1):
        if var not in assignment:
            raise ValidationError(f"assignment misses variable {var}")
    bad = _unsatisfied_clause(layout.clauses, assignment)
    if bad is not None:
        raise ValidationError(f"assignment does not satisfy clause {bad + 1}: {layout.clauses[bad]}")
    d = params.d
    chosen = [_assignment_index(layout, tau, assignment) for tau in range(params.t)]
    deleted = set()
    for (tau, l), us in layout.U.items():
        deleted |= {u for i, u in enumerate(us) if i != chosen[tau]}
    for (tau, l, pi), bp in layout.blocks.items():
        deleted |= bp.deletions(layout.options[chosen[tau]][pi], d)
    for l, cp in layout.clause_parts.items():
        clause = layout.clauses[l % params.m]
        pick = next(i for i, lit in enumerate(clause) if assignment[abs(lit)] == (lit > 0))
        keep = cp.keep_set(pick)
        deleted |= set(cp.all_vertices()) - keep
    return frozenset(deleted), _orient_witness(layout, deleted)


def _orient_witness(layout: SethLayout, deleted: set) -> Orientation:
    """Arcs point into OR-gadget internals, and away from X and Y vertices."""
    sinks = set(layout.or_internal)
    sources = set()
    for bp in layout.blocks.values():
        sources.update(bp.x)
        sources.update(bp.y)
    arcs = []
    for u, v in layout.edges:
        if u in deleted or v in deleted:
            continue
        if v in sinks or u in sources:
            arcs.append((u, v))
        elif u in sinks or v in sources:
            arcs.append((v, u))
        else:
            raise ValidationError(f"no rule orients surviving edge ({u + 1}, {v + 1})")
    return Orientation(layout.n_vertices, tuple(arcs))

