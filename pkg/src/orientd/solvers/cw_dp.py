"""Dynamic programming over a clique-width expression.

Vertices sharing a label are interchangeable for the rest of the
expression, so a state only records, per label, how many kept vertices
have each amount of remaining slack (capacity minus in-degree so far).
Slack is capped at the number of edges the label will still receive,
and labels that receive no further edges are dropped.

With a finite threshold T, a class count of T or more is replaced by a
LARGE marker. Joins then follow three rules:

* both labels hold a LARGE class: no orientation exists, discard;
* one label holds a LARGE class: discard unless the other label has fewer
  than 2d kept vertices, and orient every new edge at a LARGE-class vertex
  into it;
* otherwise the new edges are split exactly: each class chooses a multiset
  of received counts and the pair of degree sequences is tested for
  realizability on the complete bipartite graph (Gale-Ryser).

Joins must be irredundant (add either no edge or every edge between the
two labels); fully redundant joins are no-ops, partial ones are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import inf

from ..decompositions.cliquewidth import (
    CliquewidthExpression,
    Introduce,
    Join,
    Relabel,
    Union,
    eval_cw_expression,
)
from ..errors import DecompositionError, RangeError, SolverError
from ..graph import CapacitatedInstance
from ..orientation import residual_orientation
from .result import decided


def default_threshold(d: int):
    return d ** 4 if d >= 2 else None


def minimum_threshold(d: int) -> int:
    """Smallest override for which the LARGE rules stay exact."""
    return max(2 * d + 1, d * d + d + 1, 2 * d * d - d + 1)


def resolve_threshold(d: int, threshold="default"):
    if threshold == "default":
        return default_threshold(d)
    if threshold is None or threshold == inf or threshold == "inf":
        return None
    t = int(threshold)
    if t < minimum_threshold(d):
        raise RangeError(
            f"threshold {t} is below {minimum_threshold(d)}, the smallest exact value for d={d}"
        )
    return t


@dataclass
class _Plan:
    """Per-operation facts computed by evaluating the expression once."""

    children: list
    future: list  # op index -> {label: edges still to come per vertex}
    skip: list  # op index -> join adds nothing


def _plan(inst: CapacitatedInstance, expr: CliquewidthExpression) -> _Plan:
    g = inst.graph
    lg = eval_cw_expression(expr)
    if lg.graph != g:
        raise DecompositionError("expression does not evaluate to the instance graph")
    total_deg = [g.degree(v) for v in range(g.n)]
    deg = [0] * g.n
    adj = [set() for _ in range(g.n)]
    children, future, skip = [], [], []
    stack: list = []  # (op index, {label: [vertices]})
    for idx, op in enumerate(expr.ops):
        is_skip = False
        if isinstance(op, Introduce):
            term = {op.label: [op.vertex]}
            children.append(())
        elif isinstance(op, Union):
            (ib, b), (ia, a) = stack.pop(), stack.pop()
            children.append((ia, ib))
            if len(a) < len(b):
                a, b = b, a
            for lab, vs in b.items():
                a.setdefault(lab, []).extend(vs)
            term = a
        elif isinstance(op, Join):
            ic, term = stack.pop()
            children.append((ic,))
            li, lj = term.get(op.i, []), term.get(op.j, [])
            present = sum(len(adj[x] & set(lj)) for x in li) if li and lj else 0
            if not li or not lj or present == len(li) * len(lj):
                is_skip = True
            elif present:
                raise DecompositionError(
                    f"operation {idx + 1}: join({op.i},{op.j}) adds only some of its edges"
                )
            else:
                for x in li:
                    for y in lj:
                        adj[x].add(y)
                        adj[y].add(x)
                        deg[x] += 1
                        deg[y] += 1
        else:
            ic, term = stack.pop()
            children.append((ic,))
            if op.i != op.j and op.i in term:
                term.setdefault(op.j, []).extend(term.pop(op.i))
        fut = {}
        for lab, vs in term.items():
            values = {total_deg[x] - deg[x] for x in vs}
            if len(values) != 1:
                raise DecompositionError(
                    f"operation {idx + 1}: vertices of label {lab} face different futures"
                )
            fut[lab] = values.pop()
        future.append(fut)
        skip.append(is_skip)
        stack.append((idx, term))
    return _Plan(children, future, skip)


def _normalize(classes: dict, fut: dict, T) -> tuple:
    out: dict = {}
    for (lab, s), c in classes.items():
        f = fut.get(lab, 0)
        if f <= 0 or c == 0:
            continue
        key = (lab, min(s, f))
        v = out.get(key, 0) + c
        out[key] = min(v, T) if T is not None else v
    return tuple(sorted(out.items()))


def _compositions(total: int, parts: int):
    """All ways to write ``total`` as an ordered sum of ``parts`` non-negative ints."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _side_options(classes: list, other: int) -> set:
    """Ways for one side to absorb incoming edges from ``other`` partners.

    Returns a set of (received total, sorted received sequence, new classes).
    """
    per_class = []
    for s, count in classes:
        top = min(s, other)
        opts = []
        for comp in _compositions(count, top + 1):
            opts.append(tuple((s, r, k) for r, k in enumerate(comp) if k))
        per_class.append(opts)
    result = set()
    for combo in product(*per_class):
        received = []
        new = {}
        for parts in combo:
            for s, r, k in parts:
                received.extend([r] * k)
                new[s - r] = new.get(s - r, 0) + k
        received.sort(reverse=True)
        result.add((sum(received), tuple(received), tuple(sorted(new.items()))))
    return result


def gale_ryser(p, q) -> bool:
    """Is there a bipartite graph with left degrees ``p`` and right degrees ``q``?"""
    if sum(p) != sum(q):
        return False
    p = sorted(p, reverse=True)
    if p and (p[0] > len(q) or min(p) < 0):
        return False
    if q and (max(q) > len(p) or min(q) < 0):
        return False
    acc = 0
    for k in range(1, len(p) + 1):
        acc += p[k - 1]
        if acc > sum(min(x, k) for x in q):
            return False
    return True


def distribute(side_a: list, side_b: list) -> list:
    """All outcomes of orienting a complete bipartite graph between two class lists.

    ``side_a``/``side_b`` are lists of (slack, count). Returns a list of
    (new classes of a, new classes of b) as tuples of (slack, count).
    """
    a = sum(c for _, c in side_a)
    b = sum(c for _, c in side_b)
    if a == 0 or b == 0:
        return [(tuple(side_a), tuple(side_b))]
    opts_a = _side_options(side_a, b)
    opts_b = _side_options(side_b, a)
    by_total: dict = {}
    for tot, rec, new in opts_b:
        by_total.setdefault(tot, []).append((rec, new))
    out = set()
    for tot_a, rec_a, new_a in opts_a:
        for rec_b, new_b in by_total.get(a * b - tot_a, ()):
            # an edge oriented into x on side a is an edge of the bipartite
            # realization; y on side b then has a - r_y such edges
            if gale_ryser(rec_a, [a - r for r in rec_b]):
                out.add((new_a, new_b))
    return sorted(out)


def _join_outcomes(sig: tuple, i: int, j: int, d: int, T) -> list:
    rest = {}
    cls = {i: [], j: []}
    for (lab, s), c in sig:
        if lab in cls:
            cls[lab].append((s, c))
        else:
            rest[(lab, s)] = c
    large = {lab: [(s, c) for s, c in cls[lab] if T is not None and c >= T] for lab in cls}
    exact = {lab: [(s, c) for s, c in cls[lab] if T is None or c < T] for lab in cls}
    if large[i] and large[j]:
        return []
    outcomes = []
    if large[i] or large[j]:
        big, small = (i, j) if large[i] else (j, i)
        b = sum(c for _, c in exact[small])
        if b == 0:
            return [dict(sig)]
        if b >= 2 * d:
            return []
        moved = []
        for s, c in large[big]:
            if s < b:
                return []
            moved.append((s - b, c))
        for new_big, new_small in distribute(exact[big], exact[small]):
            outcomes.append({big: list(new_big) + moved, small: list(new_small)})
    else:
        for new_i, new_j in distribute(exact[i], exact[j]):
            outcomes.append({i: list(new_i), j: list(new_j)})
    result = []
    for oc in outcomes:
        classes = dict(rest)
        for lab, lst in oc.items():
            for s, c in lst:
                key = (lab, s)
                classes[key] = classes.get(key, 0) + c
        result.append(classes)
    return result


def cw_dp(inst: CapacitatedInstance, expr: CliquewidthExpression, threshold="default",
          budget: int | None = None, upper_bound: int | None = None):
    """Exact optimum over a clique-width expression.

    ``threshold`` is "default" (d^4 for d >= 2, exact counts otherwise),
    None/"inf" for exact counts, or an integer override.
    """
    d = inst.d
    T = resolve_threshold(d, threshold)
    budget = inst.budget if budget is None else budget
    cap = inst.capacities
    plan = _plan(inst, expr)
    if upper_bound is None:
        from .search import _Search

        upper_bound = len(_Search(inst, None).greedy()[0])
    ub = upper_bound if budget is None else min(upper_bound, budget)

    tables: list = []
    back: list = []
    largest = 0
    large_joins = 0
    for idx, op in enumerate(expr.ops):
        fut = plan.future[idx]
        table: dict = {}
        bp: dict = {}

        def offer(sig, cost, pointer):
            if cost <= ub and cost < table.get(sig, inf):
                table[sig] = cost
                bp[sig] = pointer

        if isinstance(op, Introduce):
            offer((), 1, True)
            kept = _normalize({(op.label, cap[op.vertex]): 1}, fut, T)
            offer(kept, 0, False)
        elif isinstance(op, Union):
            ia, ib = plan.children[idx]
            right = list(tables[ib].items())
            for s1, c1 in tables[ia].items():
                for s2, c2 in right:
                    cost = c1 + c2
                    if cost > ub:
                        continue
                    merged = dict(s1)
                    for key, c in s2:
                        merged[key] = merged.get(key, 0) + c
                    offer(_normalize(merged, fut, T), cost, (s1, s2))
        elif isinstance(op, Relabel):
            (ic,) = plan.children[idx]
            for s, cost in tables[ic].items():
                merged: dict = {}
                for (lab, sl), c in s:
                    key = (op.j if lab == op.i else lab, sl)
                    merged[key] = merged.get(key, 0) + c
                offer(_normalize(merged, fut, T), cost, s)
        else:
            (ic,) = plan.children[idx]
            for s, cost in tables[ic].items():
                if plan.skip[idx]:
                    offer(_normalize(dict(s), fut, T), cost, s)
                    continue
                if T is not None and any(c >= T for (lab, _), c in s if lab in (op.i, op.j)):
                    large_joins += 1
                for classes in _join_outcomes(s, op.i, op.j, d, T):
                    offer(_normalize(classes, fut, T), cost, s)
        tables.append(table)
        back.append(bp)
        largest = max(largest, len(table))
        # free child tables that are no longer needed
        for c in plan.children[idx]:
            tables[c] = None

    stats = {"largest_table": largest, "threshold": T, "upper_bound": ub, "large_joins": large_joins}
    if not expr.ops:
        o = residual_orientation(inst.with_budget(None), ())
        return decided(0, (), o, budget, "cw", stats=stats)
    final = tables[-1]
    if not final:
        if budget is not None and ub == budget:
            return decided(None, (), None, budget, "cw", stats=stats)
        raise SolverError("expression DP found no solution within the heuristic upper bound")
    best_sig = min(final, key=lambda s: (final[s], s))
    optimum = final[best_sig]

    deleted = set()
    stack = [(len(expr.ops) - 1, best_sig)]
    while stack:
        idx, sig = stack.pop()
        op = expr.ops[idx]
        ptr = back[idx][sig]
        if isinstance(op, Introduce):
            if ptr:
                deleted.add(op.vertex)
        elif isinstance(op, Union):
            ia, ib = plan.children[idx]
            stack.append((ia, ptr[0]))
            stack.append((ib, ptr[1]))
        else:
            stack.append((plan.children[idx][0], ptr))
    if len(deleted) != optimum:
        raise SolverError("backpointer walk disagrees with the optimum")
    o = residual_orientation(inst.with_budget(None), deleted)
    return decided(optimum, deleted, o, budget, "cw", witness_complete=o is not None, stats=stats)
