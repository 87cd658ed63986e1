import pytest
from hypothesis import given
from hypothesis import strategies as st

from orientd.decompositions import is_chordal
from orientd.errors import ParseError, RangeError, ValidationError
from orientd.graph import (
    CapacitatedInstance,
    DeletionSet,
    Graph,
    delete_vertices,
    format_witness,
    parse_graph_text,
    parse_instance,
    parse_witness,
    random_capacities,
    random_chordal,
    random_graph,
    serialize_graph,
    serialize_instance,
)

from strategies import instances


def test_parse_path_instance():
    inst = parse_instance("p orient 3 2\ne 1 2\ne 2 3\nd 1")
    assert inst.graph.n == 3
    assert inst.graph.sorted_edges() == [(0, 1), (1, 2)]
    assert inst.d == 1 and inst.capacities == (1, 1, 1)
    assert inst.budget is None


def test_parse_capacity_line():
    inst = parse_instance("p orient 1 0\nd 0\nv 1 0")
    assert inst.n == 1 and inst.d == 0 and inst.capacities == (0,)


def test_parse_budget_and_comments():
    inst = parse_instance("c a comment\np orient 2 1\nd 2\nk 1\ne 2 1\nv 2 1\n")
    assert inst.budget == 1
    assert inst.capacities == (2, 1)
    assert inst.graph.sorted_edges() == [(0, 1)]


@pytest.mark.parametrize("text, exc", [
    ("p orient 2 1\ne 1 1\nd 1", ValidationError),
    ("p orient 2 2\nd 1\ne 1 2\ne 2 1", ValidationError),
    ("p orient 2 1\nd 1\ne 1 3", RangeError),
    ("p orient 2 1\nd 1\ne 1 2\nv 1 2", RangeError),
    ("p orient 2 1\ne 1 2", ParseError),
    ("d 1\np orient 1 0", ParseError),
    ("p orient 2 2\nd 1\ne 1 2", ParseError),
    ("p orient 1 0\nd 1\nx 1", ParseError),
    ("p orient 1 0\nd one", ParseError),
    ("", ParseError),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_instance(text)


def test_parse_error_carries_line_number():
    with pytest.raises(ParseError) as info:
        parse_instance("p orient 2 1\nd 1\ne 1 9\n")
    assert info.value.lineno == 3


def test_serialize_canonical():
    inst = parse_instance("p orient 3 2\ne 3 2\ne 2 1\nd 1")
    assert serialize_instance(inst) == "p orient 3 2\nd 1\ne 1 2\ne 2 3\n"


def test_serialize_empty():
    inst = CapacitatedInstance.uniform(Graph(0, frozenset()), 0)
    assert serialize_instance(inst) == "p orient 0 0\nd 0\n"


@given(instances(max_n=9))
def test_round_trip(inst):
    assert parse_instance(serialize_instance(inst)) == inst


@pytest.mark.parametrize("seed", range(100))
def test_round_trip_random(seed):
    n = seed % 10
    g = random_graph(n, (0.2, 0.5, 0.8)[seed % 3], seed)
    inst = CapacitatedInstance(g, 2, random_capacities(n, 2, seed), seed % 4)
    assert parse_instance(serialize_instance(inst)) == inst


def test_graph_text_formats():
    g = parse_graph_text("c x\np edge 3 2\ne 1 2\ne 2 3\n")
    assert g.sorted_edges() == [(0, 1), (1, 2)]
    assert parse_graph_text(serialize_graph(g)) == g
    assert parse_graph_text("p col 2 1\ne 1 2\n").m == 1
    assert parse_graph_text("p orient 2 1\nd 0\ne 1 2\n").m == 1


def test_graph_rejects_bad_edges():
    with pytest.raises(ValidationError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValidationError):
        Graph.from_edges(2, [(0, 1), (1, 0)])
    with pytest.raises(ValidationError):
        Graph.from_edges(2, [(0, 2)])


def test_capacity_out_of_range():
    with pytest.raises(RangeError):
        CapacitatedInstance(Graph.path(2), 1, (0, 2))
    with pytest.raises(ValidationError):
        CapacitatedInstance(Graph.path(2), 1, (0,))


def test_random_graph_extremes():
    assert random_graph(5, 0, 7).m == 0
    assert random_graph(5, 1, 7) == Graph.complete(5)
    assert random_graph(9, 0.5, 3) == random_graph(9, 0.5, 3)


def test_random_chordal_extremes():
    assert random_chordal(4, 1.0, 1) == Graph.complete(4)
    assert random_chordal(6, 0, 1).m == 0
    assert random_chordal(10, 0.5, 5) == random_chordal(10, 0.5, 5)


@pytest.mark.parametrize("seed", range(100))
def test_random_chordal_is_chordal(seed):
    assert is_chordal(random_chordal(3 + seed % 9, (0.2, 0.5, 0.8)[seed % 3], seed))


def test_delete_vertices():
    k3 = Graph.complete(3)
    sub, index = delete_vertices(k3, {0})
    assert sub == Graph.path(2) and index == {1: 0, 2: 1}
    assert delete_vertices(k3, ())[0] == k3
    assert delete_vertices(k3, {0, 1, 2})[0] == Graph(0, frozenset())
    with pytest.raises(ValidationError):
        delete_vertices(k3, {5})


def test_deletion_set_check():
    with pytest.raises(ValidationError):
        DeletionSet(frozenset({3})).check(Graph.path(3))


def test_witness_round_trip():
    text = format_witness({2, 0}, [(1, 3), (4, 3)])
    assert text == "del 1\ndel 3\narc 2 4\narc 5 4\n"
    deleted, arcs = parse_witness("result feasible 2\nc x\n" + text, 5)
    assert deleted == {0, 2}
    assert sorted(arcs) == [(1, 3), (4, 3)]


@pytest.mark.parametrize("text", ["del\n", "arc 1\n", "del 0\n", "del 9\n", "foo 1\n", "del x\n"])
def test_witness_errors(text):
    with pytest.raises(ParseError):
        parse_witness(text, 5)


@given(st.integers(0, 12), st.floats(0, 1), st.integers(0, 10**6))
def test_random_graph_is_simple(n, p, seed):
    g = random_graph(n, p, seed)
    assert all(0 <= u < v < n for u, v in g.edges)
