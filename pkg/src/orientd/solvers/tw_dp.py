"""Dynamic programming over a nice tree decomposition.

A state assigns each bag vertex either DELETED or the number of incoming
edges it has received so far (at most its capacity). Edges are oriented
when the first of their two endpoints is forgotten: at that point the
other endpoint is still in the bag, and every edge is handled exactly
once even across join branches. Deletions are charged at forget time, so
join children never double count. The root bag is forgotten virtually.
"""

from __future__ import annotations

from itertools import combinations

from ..decompositions.treedecomp import (
    FORGET,
    INTRODUCE,
    JOIN,
    LEAF,
    NiceNode,
    NiceTreeDecomposition,
    make_nice,
    validate_td,
)
from ..errors import DecompositionError, SolverError
from ..graph import CapacitatedInstance
from ..orientation import residual_orientation
from .result import SolveResult, decided

DELETED = -1


def _upper_bound(inst: CapacitatedInstance) -> int:
    from .search import _Search

    removed, _ = _Search(inst, None).greedy()
    return len(removed)


def tw_dp(inst: CapacitatedInstance, ntd: NiceTreeDecomposition, budget: int | None = None,
          upper_bound: int | None = None, check: bool = True) -> SolveResult:
    """Exact optimum over the decomposition; witness via backpointers and flow."""
    g = inst.graph
    if check:
        ntd.check_shape()
        verdict = validate_td(g, ntd.flatten())
        if not verdict:
            raise DecompositionError(f"invalid decomposition: {verdict.message}")
    budget = inst.budget if budget is None else budget
    cap = inst.capacities
    ub = _upper_bound(inst) if upper_bound is None else upper_bound
    if budget is not None:
        ub = min(ub, budget)
    nbrs = [set(g.neighbors(v)) for v in range(g.n)]

    nodes = list(ntd.nodes)
    root_bag = nodes[-1].bag
    cur = len(nodes) - 1
    bag = root_bag
    for v in sorted(root_bag):
        bag = bag - {v}
        nodes.append(NiceNode(FORGET, bag, v, (cur,)))
        cur = len(nodes) - 1

    # tables: node -> {state: cost}; state is a tuple aligned with sorted(bag)
    tables: list = [None] * len(nodes)
    back: list = [None] * len(nodes)
    order_of = [tuple(sorted(node.bag)) for node in nodes]
    remaining = [0] * len(nodes)
    for node in nodes:
        for c in node.children:
            remaining[c] += 1
    largest = 0

    for idx, node in enumerate(nodes):
        table: dict = {}
        bp: dict = {}
        verts = order_of[idx]
        if node.kind == LEAF:
            table[()] = 0
            bp[()] = None
        elif node.kind == INTRODUCE:
            child = node.children[0]
            pos = verts.index(node.vertex)
            for s, cost in tables[child].items():
                pending = sum(1 for x in s if x == DELETED)
                for val in (0, DELETED):
                    if val == DELETED and cost + pending + 1 > ub:
                        continue
                    ns = s[:pos] + (val,) + s[pos:]
                    if cost < table.get(ns, ub + 1):
                        table[ns] = cost
                        bp[ns] = s
        elif node.kind == FORGET:
            child = node.children[0]
            v = node.vertex
            cverts = order_of[child]
            pos = cverts.index(v)
            nb_pos = [i for i, u in enumerate(verts) if u in nbrs[v]]
            for s, cost in tables[child].items():
                rest = s[:pos] + s[pos + 1:]
                if s[pos] == DELETED:
                    ncost = cost + 1
                    if ncost + sum(1 for x in rest if x == DELETED) > ub:
                        continue
                    if ncost < table.get(rest, ub + 1):
                        table[rest] = ncost
                        bp[rest] = s
                    continue
                live = [i for i in nb_pos if rest[i] != DELETED]
                room = cap[v] - s[pos]
                must_push = len(live) - room  # edges that have to point away from v
                open_ = [i for i in live if rest[i] < cap[verts[i]]]
                if must_push > len(open_):
                    continue
                lo = max(0, must_push)
                base = list(rest)
                for k in range(lo, len(open_) + 1):
                    for chosen in combinations(open_, k):
                        ns = base[:]
                        for i in chosen:
                            ns[i] += 1
                        ns = tuple(ns)
                        if cost < table.get(ns, ub + 1):
                            table[ns] = cost
                            bp[ns] = s
        elif node.kind == JOIN:
            left, right = node.children
            groups: dict = {}
            for s, cost in tables[right].items():
                mask = tuple(x == DELETED for x in s)
                groups.setdefault(mask, []).append((s, cost))
            caps_here = [cap[v] for v in verts]
            for s1, c1 in tables[left].items():
                mask = tuple(x == DELETED for x in s1)
                pending = sum(mask)
                for s2, c2 in groups.get(mask, ()):
                    cost = c1 + c2
                    if cost + pending > ub:
                        continue
                    ns = []
                    ok = True
                    for a, b, c in zip(s1, s2, caps_here):
                        if a == DELETED:
                            ns.append(DELETED)
                        elif a + b > c:
                            ok = False
                            break
                        else:
                            ns.append(a + b)
                    if not ok:
                        continue
                    ns = tuple(ns)
                    if cost < table.get(ns, ub + 1):
                        table[ns] = cost
                        bp[ns] = (s1, s2)
        else:
            raise DecompositionError(f"unknown node kind {node.kind!r}")
        tables[idx] = table
        back[idx] = bp
        largest = max(largest, len(table))

    final = tables[-1]
    stats = {"largest_table": largest, "upper_bound": ub}
    if () not in final:
        if budget is not None and ub == budget:
            return decided(None, (), None, budget, "tw", stats=stats)
        raise SolverError("decomposition DP found no solution within the heuristic upper bound")
    optimum = final[()]

    # walk backpointers from the root
    deleted = set()
    stack = [(len(nodes) - 1, ())]
    while stack:
        idx, s = stack.pop()
        node = nodes[idx]
        prev = back[idx][s]
        if node.kind == LEAF:
            continue
        if node.kind == JOIN:
            stack.append((node.children[0], prev[0]))
            stack.append((node.children[1], prev[1]))
            continue
        if node.kind == FORGET:
            cverts = order_of[node.children[0]]
            if prev[cverts.index(node.vertex)] == DELETED:
                deleted.add(node.vertex)
        stack.append((node.children[0], prev))
    if len(deleted) != optimum:
        raise SolverError("backpointer walk disagrees with the optimum")
    o = residual_orientation(inst.with_budget(None), deleted)
    if o is None:
        raise SolverError("reconstructed deletion set is not feasible")
    return decided(optimum, deleted, o, budget, "tw", stats=stats)


def tw_solve(inst: CapacitatedInstance, td=None, budget: int | None = None) -> SolveResult:
    """tw_dp on a supplied decomposition, or on a min-fill one."""
    from ..decompositions.treedecomp import min_fill_td

    if td is None:
        td = min_fill_td(inst.graph)
    verdict = validate_td(inst.graph, td)
    if not verdict:
        raise DecompositionError(f"invalid decomposition: {verdict.message}")
    return tw_dp(inst, make_nice(td), budget=budget)
