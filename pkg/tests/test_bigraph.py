import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from networkx.algorithms import isomorphism as nxiso

from rbh.bigraph import (
    BipartiteGraph,
    FamilyName,
    construct,
    decode_graph,
    encode_graph,
    enumerate_graphs,
    is_isomorphic,
    join,
    make_graph,
    quasi_complement,
)
from rbh.errors import EnumerationTooLarge, InvalidEdge, InvalidParameter, ParseError, SamePartEdge


def graphs(max_part=4):
    @st.composite
    def build(draw):
        n_x = draw(st.integers(1, max_part))
        n_y = draw(st.integers(1, max_part))
        mask = draw(st.integers(0, (1 << (n_x * n_y)) - 1))
        return BipartiteGraph.from_mask(n_x, n_y, mask)
    return build()


def nx_isomorphic(g, h):
    """Oracle: networkx matcher with a part attribute, plus the part swap."""
    def to_nx(graph, swap=False):
        G = nx.Graph()
        for v in range(graph.n):
            G.add_node(v, part=graph.in_x(v) != swap)
        G.add_edges_from(graph.edges())
        return G
    match = nxiso.categorical_node_match("part", None)
    if (g.n_x, g.n_y) == (h.n_x, h.n_y):
        if nx.is_isomorphic(to_nx(g), to_nx(h), node_match=match):
            return True
    if (g.n_x, g.n_y) == (h.n_y, h.n_x):
        return nx.is_isomorphic(to_nx(g), to_nx(h, swap=True), node_match=match)
    return False


def test_make_graph_merges_duplicates_and_orients():
    g = make_graph(2, 2, [(0, 2), (2, 0), (3, 1)])
    assert g.edges() == [(0, 2), (1, 3)]
    assert g.num_edges == 2


def test_make_graph_errors():
    with pytest.raises(InvalidEdge):
        make_graph(2, 2, [(0, 4)])
    with pytest.raises(SamePartEdge):
        make_graph(2, 2, [(0, 1)])


def test_mask_roundtrip_and_matrices():
    g = make_graph(2, 3, [(0, 2), (1, 4), (0, 4)])
    assert BipartiteGraph.from_mask(2, 3, g.mask) == g
    assert BipartiteGraph.from_biadjacency(g.biadjacency) == g
    a = g.adjacency_matrix()
    assert a.shape == (5, 5) and np.array_equal(a, a.T) and a.sum() == 6
    assert g.degrees() == [2, 1, 1, 0, 2]
    assert g.neighbors(4) == [0, 1]


def test_components_include_isolated():
    g = make_graph(2, 2, [(0, 2)])
    comps = g.components()
    assert ([0], [0]) in comps and ([1], []) in comps and ([], [1]) in comps
    assert not g.is_connected()
    assert BipartiteGraph.complete(2, 3).is_connected()


@pytest.mark.parametrize("name, parts, edges", [
    (("Q", 0, 2), (2, 2), [(0, 2), (1, 2)]),
    (("Q", 0, 3), (3, 3), [(0, 3), (0, 4), (1, 3), (1, 4), (2, 3), (2, 4)]),
    (("B", 1, 2), (2, 2), [(0, 2), (0, 3), (1, 2)]),
    (("T", 0, 2), (1, 2), [(0, 1)]),
    (("S", 0, 2), (2, 1), [(0, 2), (1, 2)]),
    (("R", 0, 2), (2, 2), []),
])
def test_construct_examples(name, parts, edges):
    g = construct(FamilyName(*name))
    assert (g.n_x, g.n_y) == parts
    assert g.edges() == edges


@pytest.mark.parametrize("n", range(2, 7))
def test_construct_edge_counts(n):
    for k in range(0, n):
        assert construct(FamilyName("Q", k, n)).num_edges == n * k + (n - k) * (n - k - 1)
        assert construct(FamilyName("T", k, n)).num_edges == n * k + (n - k - 1) ** 2
    for k in range(0, n + 1):
        assert construct(FamilyName("B", k, n)).num_edges == n * k + (n - k) ** 2
        assert construct(FamilyName("R", k, n)).num_edges == 2 * k * (n - k) + k * k


def test_construct_out_of_range():
    with pytest.raises(InvalidParameter):
        construct(FamilyName("Q", 3, 3))
    with pytest.raises(InvalidParameter):
        construct(FamilyName("Z", 0, 3))


def test_family_name_parse_and_str():
    assert FamilyName.parse("b,1,3") == FamilyName("B", 1, 3)
    assert str(FamilyName("T", 2, 4)) == "T^2_4"
    with pytest.raises(InvalidParameter):
        FamilyName.parse("B1")


def test_join_label_order():
    g = join(BipartiteGraph.complete(1, 1), BipartiteGraph.empty(1, 2))
    # X = {0 (from g1), 1 (from g2)}, Y = {2 (g1), 3, 4 (g2)}
    assert g.edges() == [(0, 2), (0, 3), (0, 4), (1, 2)]


@given(graphs())
def test_quasi_complement_involution(g):
    qc = quasi_complement(g)
    assert quasi_complement(qc) == g
    assert qc.num_edges == g.n_x * g.n_y - g.num_edges


def test_isomorphism_against_networkx(rng):
    all33 = list(enumerate_graphs(2, 3))
    for g in all33:
        for h in all33:
            if g.num_edges == h.num_edges:
                assert is_isomorphic(g, h) == nx_isomorphic(g, h)
    pool = [BipartiteGraph.from_biadjacency(rng.random((3, 3)) < 0.5) for _ in range(150)]
    for g, h in zip(pool, pool[1:]):
        assert is_isomorphic(g, h) == nx_isomorphic(g, h)
        assert is_isomorphic(g, g.transpose())


@given(graphs(4), st.randoms(use_true_random=False))
def test_isomorphic_to_relabeling(g, r):
    px = list(range(g.n_x))
    py = list(range(g.n_y))
    r.shuffle(px)
    r.shuffle(py)
    h = make_graph(g.n_x, g.n_y, [(px[u], g.n_x + py[v - g.n_x]) for u, v in g.edges()])
    assert is_isomorphic(g, h)
    assert is_isomorphic(h.transpose(), g)


def test_part_sizes_respected():
    # K_{1,2} on parts (1,2) vs K_{2,1} on parts (2,1) are the same graph with parts swapped
    assert is_isomorphic(BipartiteGraph.complete(1, 2), BipartiteGraph.complete(2, 1))
    assert not is_isomorphic(BipartiteGraph.empty(1, 3), BipartiteGraph.empty(2, 2))


def test_enumerate_order_and_bound():
    gs = list(enumerate_graphs(2, 2))
    assert len(gs) == 16 and [g.mask for g in gs] == list(range(16))
    assert [g.mask for g in enumerate_graphs(2, 2, 3, 6)] == [3, 4, 5]
    with pytest.raises(EnumerationTooLarge):
        next(enumerate_graphs(6, 7))


@given(graphs(5))
def test_bgf_roundtrip(g):
    text = encode_graph(g)
    assert text.endswith("\n")
    assert decode_graph(text) == g


@pytest.mark.parametrize("text, line", [
    ("", 1),
    ("p bgf 2 2 1\n", 1),
    ("p bgf 2 2 1\ne 0 1\n", 2),
    ("p bgf 2 2 2\ne 0 2\ne 0 2\n", 3),
    ("p bgf 2 2 1\ne 0 x\n", 2),
    ("p bfg 2 2 0\n", 1),
])
def test_bgf_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        decode_graph(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")
