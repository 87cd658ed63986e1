"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from orientd.graph import CapacitatedInstance, Graph


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def instances(draw, min_n=0, max_n=8, max_d=3, uniform=False):
    g = draw(graphs(min_n, max_n))
    d = draw(st.integers(0, max_d))
    if uniform:
        return CapacitatedInstance.uniform(g, d)
    caps = draw(st.lists(st.integers(0, d), min_size=g.n, max_size=g.n))
    return CapacitatedInstance(g, d, tuple(caps))
