import itertools

import pytest

from orientd.decompositions import eval_cw_expression, is_chordal
from orientd.errors import ParseError, ValidationError
from orientd.gadgets import (
    InstanceBuilder,
    MulticoloredISInstance,
    block_gadget,
    block_parts,
    clause_gadget,
    cw_hardness_instance,
    cw_hardness_witness,
    format_roles,
    group_size,
    option_tuples,
    or_gadget,
    parse_cnf,
    parse_mcis,
    reduce_dominating_set,
    reduce_ds_chordal,
    reduce_is_chordal,
    serialize_cnf,
    serialize_mcis,
    seth_instance,
    seth_witness,
    witness_orientation,
)
from orientd.graph import Graph, random_graph
from orientd.orientation import residual_orientation, verify_solution
from orientd.solvers import (
    all_minimum_solutions,
    branch_and_bound,
    brute_force,
    domination_number,
    independence_number,
    tw_solve,
)


# -- OR gadget ----------------------------------------------------------------


def test_or_gadget_sizes():
    h = or_gadget(1)
    assert len(h["internal"]) == 4 and h.instance.graph.m == 8
    h = or_gadget(2)
    assert len(h["internal"]) == 6 and h.instance.graph.m == 12
    assert all(h.instance.capacities[x] == 1 for x in h["internal"])


@pytest.mark.parametrize("d", [1, 2])
@pytest.mark.parametrize("endpoint", ["zero", "full"])
def test_or_gadget_forces_an_endpoint(d, endpoint):
    h = or_gadget(d, 0 if endpoint == "zero" else d)
    opt, sols = all_minimum_solutions(h.instance)
    u, v = h["endpoint_u"], h["endpoint_v"]
    assert opt == 1
    assert sorted(sols, key=sorted) == [frozenset({u}), frozenset({v})]


def test_or_gadget_needs_positive_d():
    with pytest.raises(ValidationError):
        or_gadget(0)


# -- clause gadget --------------------------------------------------------------


@pytest.mark.parametrize("size", [1, 2, 3, 4])
def test_clause_gadget_minimum(size):
    h = clause_gadget(size)
    assert h.instance.n == 3 * size + 2
    opt, sols = all_minimum_solutions(h.instance)
    assert opt == 2 * size
    inputs = {h[f"input_{i + 1}"] for i in range(size)}
    assert all(not inputs <= s for s in sols)


def test_clause_keep_sets_are_independent():
    b = InstanceBuilder(0)
    from orientd.gadgets import add_clause_gadget
    parts = add_clause_gadget(b, 4)
    g = b.build().graph
    for chosen in range(4):
        keep = parts.keep_set(chosen)
        assert len(keep) == 6
        assert not any(g.has_edge(u, v) for u, v in itertools.combinations(keep, 2))


# -- block gadget ---------------------------------------------------------------


def test_block_gadget_structure_d1():
    h = block_gadget(1)
    p = block_parts(h, 1)
    inst = h.instance
    assert len(p.x) == len(p.y) == 1 and len(p.q) == 3 and len(p.w) == len(p.z) == 3
    caps = inst.capacities
    assert caps[p.a] == caps[p.a_prime] == 1 and caps[p.b] == 0
    assert [caps[w] for w in p.w] == [0, 1, 0] and [caps[z] for z in p.z] == [1, 0, 0]
    assert all(caps[q] == 1 for q in p.q) and caps[p.x[0]] == caps[p.y[0]] == 0
    # 4 fixed OR gadgets plus the 12 non-matching W-Z pairs, each with 4 internals
    assert len(h["or_internal"]) == 16 * 4
    g = inst.graph

    def or_linked(u, v):
        return any(g.has_edge(u, x) and g.has_edge(v, x) for x in h["or_internal"])

    assert or_linked(p.a, p.b) and or_linked(p.b, p.a_prime)
    assert or_linked(p.a, p.w[2]) and or_linked(p.a_prime, p.z[2])
    for i, j in itertools.product(range(3), repeat=2):
        assert or_linked(p.w[i], p.z[j]) == (i != j)


@pytest.mark.parametrize("d", [1, 2])
def test_block_gadget_capacities(d):
    h = block_gadget(d)
    p = block_parts(h, d)
    caps = h.instance.capacities
    assert [caps[w] for w in p.w] == list(range(d + 1)) + [0]
    assert [caps[z] for z in p.z] == [d - i for i in range(d + 1)] + [0]
    assert all(caps[q] == d for q in p.q) and len(p.q) == 2 * d + 1


@pytest.mark.parametrize("d", [1, 2])
def test_block_options_are_solutions(d):
    h = block_gadget(d)
    p = block_parts(h, d)
    for option in range(d + 2):
        deleted = p.deletions(option, d)
        expected = 3 * (d + 1) + (1 if option == d + 1 else 0)
        assert len(deleted) == expected
        assert residual_orientation(h.instance, deleted) is not None


def test_block_minimum_d1():
    h = block_gadget(1)
    assert tw_solve(h.instance).optimum == 6
    assert branch_and_bound(h.instance).optimum == 6


def test_block_option_range():
    p = block_parts(block_gadget(1), 1)
    with pytest.raises(ValidationError):
        p.deletions(3, 1)


# -- dominating set -------------------------------------------------------------


def test_ds_drawn_example():
    g = Graph.from_edges(5, [(2, 0), (0, 1), (1, 2), (2, 4), (4, 3), (3, 1)])
    red = reduce_dominating_set(g)
    assert brute_force(red.instance, guard=-1).optimum == 2 == domination_number(g)
    v1 = red.roles["V1"]
    deleted = {v1[1], v1[4]}
    assert residual_orientation(red.instance, deleted) is not None


def test_ds_isolated_vertex():
    red = reduce_dominating_set(Graph(1, frozenset()))
    assert brute_force(red.instance, guard=-1).optimum == 1


def test_ds_capacities():
    red = reduce_dominating_set(Graph.path(4))
    caps = red.instance.capacities
    assert red.instance.d == 2
    assert all(caps[v] == 0 for v in red.roles["V1"])
    assert all(caps[v] == 1 for v in red.roles["V2"])
    assert all(caps[v] == 2 for v in red.roles["internal"])


@pytest.mark.parametrize("seed", range(50))
def test_ds_optimum_is_domination_number(seed):
    g = random_graph(1 + seed % 7, (0.2, 0.5, 0.8)[seed % 3], seed)
    assert brute_force(reduce_dominating_set(g).instance, guard=-1).optimum == domination_number(g)


# -- independent set, chordal ---------------------------------------------------


def test_is_chordal_c5():
    red = reduce_is_chordal(Graph.cycle(5), 3)
    assert red.instance.d == 3 and red.target == 2
    assert is_chordal(red.instance.graph)
    assert not brute_force(red.instance, guard=-1).feasible


def test_is_chordal_trivial_k1():
    g = Graph.cycle(4)
    assert brute_force(reduce_is_chordal(g, 1).instance, guard=-1).feasible


@pytest.mark.parametrize("k", [0, 2, -1])
def test_is_chordal_rejects_even_k(k):
    with pytest.raises(ValidationError):
        reduce_is_chordal(Graph.cycle(4), k)


@pytest.mark.parametrize("seed", range(30))
def test_is_chordal_decision(seed):
    n = 3 + seed % 4
    g = random_graph(n, (0.2, 0.5, 0.8)[seed % 3], seed)
    for k in (1, 3):
        if k > n:
            continue
        red = reduce_is_chordal(g, k)
        assert is_chordal(red.instance.graph)
        assert brute_force(red.instance, guard=-1).feasible == (independence_number(g) >= k)


# -- dominating set, chordal ----------------------------------------------------


def test_ds_chordal_star():
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert brute_force(reduce_ds_chordal(star, 1).instance, guard=-1).feasible


def test_ds_chordal_edgeless():
    red = reduce_ds_chordal(Graph(3, frozenset()), 1)
    assert not brute_force(red.instance, guard=-1).feasible


def test_ds_chordal_padding():
    red = reduce_ds_chordal(Graph.path(4), 2)
    assert red.instance.n == 12 and red.target == 3 and "padding" in red.roles


@pytest.mark.parametrize("seed", range(30))
def test_ds_chordal_decision(seed):
    n = 2 + seed % 5
    g = random_graph(n, (0.2, 0.5, 0.8)[seed % 3], seed)
    gamma = domination_number(g)
    for k in range(4):
        red = reduce_ds_chordal(g, k)
        assert is_chordal(red.instance.graph)
        assert brute_force(red.instance, guard=-1).feasible == (gamma <= k)


# -- column construction from CNF ------------------------------------------------


def test_seth_parameters_two_variables():
    inst, target, layout = seth_instance([[1, 2]], 1, 1)
    p = layout.params
    assert (p.gamma, p.t, p.sections, p.columns) == (1, 2, 4, 4)
    assert target == 4 * (2 * 2 + 2 * (6 + 2)) == inst.budget
    for us in layout.U.values():
        assert len(us) == 3 and all(inst.capacities[u] == 0 for u in us)


def test_seth_padding_and_groups():
    _, _, layout = seth_instance([[1, 2, 3]], 1, 2, sections=1)
    assert layout.clauses == ((1, 2, 3, 1),)
    assert layout.params.gamma == group_size(1, 2) == 3
    assert option_tuples(1, 2)[:4] == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_seth_witness_simple():
    inst, target, layout = seth_instance([[1, 2]], 1, 1)
    deleted, o = seth_witness(layout, {1: True, 2: False})
    assert len(deleted) == target
    assert verify_solution(inst, deleted, o)


def test_seth_witness_rejects_unsatisfying():
    _, _, layout = seth_instance([[1, 2]], 1, 1)
    with pytest.raises(ValidationError, match="clause 1"):
        seth_witness(layout, [False, False])


@pytest.mark.parametrize("cnf,assignment", [
    ([[1, -2], [2]], [True, True]),
    ([[-1], [2, 3], [-2, -3]], [False, True, False]),
])
def test_seth_witness_more(cnf, assignment):
    inst, target, layout = seth_instance(cnf, 1, 1, sections=2)
    deleted, o = seth_witness(layout, assignment)
    assert len(deleted) == target and verify_solution(inst, deleted, o)


def test_seth_errors():
    with pytest.raises(ValidationError):
        seth_instance([], 1, 1)
    with pytest.raises(ValidationError):
        seth_instance([[1, 3]], 1, 1)
    with pytest.raises(ValidationError):
        seth_instance([[1]], 0, 1)


def test_cnf_format():
    clauses = parse_cnf("c x\np cnf 3 2\n1 -2 0\n3\n2 0\n")
    assert clauses == [(1, -2), (3, 2)]
    assert parse_cnf(serialize_cnf(clauses)) == clauses
    for bad in ("1 2 0\n", "p cnf 1 1\n2 0\n", "p cnf 1 1\nx 0\n", "p dnf 1 1\n"):
        with pytest.raises(ParseError):
            parse_cnf(bad)


# -- multicolored independent set construction -----------------------------------


ONE_EDGE = MulticoloredISInstance(2, 2, (((1, 1), (2, 1)),))


def test_cw_hardness_structure():
    inst, target, expr, layout = cw_hardness_instance(ONE_EDGE)
    assert target == 2 * 2 + 3 and inst.d == 2
    for i in (1, 2):
        assert len(layout.W[i]) == target + 1
        assert all(inst.capacities[w] == 2 for w in layout.W[i])
    quad = layout.quads[((1, 1), (2, 1))]
    assert [inst.capacities[x] for x in quad] == [0, 0, 0, 0]
    assert eval_cw_expression(expr).graph == inst.graph
    assert expr.label_count <= 2 * 2 + 8


def test_cw_hardness_quad_capacities():
    mc = MulticoloredISInstance(2, 4, (((1, 2), (2, 3)),))
    inst, _, _, layout = cw_hardness_instance(mc)
    assert [inst.capacities[x] for x in layout.quads[((1, 2), (2, 3))]] == [1, 1, 0, 2]


def test_cw_hardness_witness_example():
    inst, target, _, layout = cw_hardness_instance(ONE_EDGE)
    deleted = cw_hardness_witness(ONE_EDGE, (2, 2))
    assert len(deleted) == 7
    assert verify_solution(inst, deleted, witness_orientation(inst, deleted))
    with pytest.raises(ValidationError, match="edge"):
        cw_hardness_witness(layout, (1, 1))


def test_cw_hardness_lower_bound_truncated():
    inst, target, _, layout = cw_hardness_instance(ONE_EDGE, truncated=True)
    assert not layout.conforming
    assert not branch_and_bound(inst, budget=target - 1).feasible
    assert branch_and_bound(inst, budget=target).feasible


@pytest.mark.parametrize("n,k", [(2, 2), (3, 2), (2, 3)])
def test_cw_hardness_expression_equality(n, k):
    edges = [((i, l), (j, h)) for i in range(1, k + 1) for j in range(i + 1, k + 1)
             for l in range(1, n + 1) for h in range(1, n + 1) if (l + h) % 2 == 0]
    mc = MulticoloredISInstance(k, n, tuple(edges))
    inst, _, expr, layout = cw_hardness_instance(mc)
    assert eval_cw_expression(expr).graph == inst.graph
    assert layout.labels_used <= 2 * k + 8


def test_mcis_format():
    mc = parse_mcis("c x\np mcis 2 2\ne 1 3\n")
    assert mc == ONE_EDGE
    assert parse_mcis(serialize_mcis(mc)) == mc
    for bad in ("e 1 2\n", "p mcis 2 2\ne 1 9\n", "p mcis 2\n", "p mcis 2 2\nq 1\n"):
        with pytest.raises(ParseError):
            parse_mcis(bad)
    with pytest.raises(ValidationError):
        parse_mcis("p mcis 2 2\ne 1 2\n")


def test_role_table():
    assert format_roles({"a": 0, "bs": (1, 2)}) == "role a 1\nrole bs 2 3\n"
    assert format_roles({}) == ""


def test_builder_rejects_bad_input():
    b = InstanceBuilder(1)
    u, v = b.vertex(1), b.vertex(0)
    b.edge(u, v)
    with pytest.raises(ValidationError):
        b.edge(v, u)
    with pytest.raises(ValidationError):
        b.edge(u, u)
    with pytest.raises(ValidationError):
        b.vertex(2)
