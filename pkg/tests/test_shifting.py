import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rbh.bigraph import BipartiteGraph, enumerate_graphs, is_isomorphic, make_graph
from rbh.errors import InvalidPair, SamePartViolation
from rbh.shifting import ShiftPair, bi_shift, is_bi_shifted, is_shift_fixpoint, shift_pairs, shift_xy
from rbh.spectral import rho


def naive_shift(g, x, y):
    """Edge-set definition: move each edge {y, v} to {x, v} unless it exists."""
    edges = set(g.edges())
    out = set()
    for u, v in edges:
        if y in (u, v):
            other = v if u == y else u
            moved = tuple(sorted((x, other)))
            if moved not in edges:
                out.add(moved)
                continue
        out.add((u, v))
    return make_graph(g.n_x, g.n_y, out)


@st.composite
def graph_and_pair(draw, max_part=5):
    n_x = draw(st.integers(1, max_part))
    n_y = draw(st.integers(2 if n_x < 2 else 1, max_part))
    mask = draw(st.integers(0, (1 << (n_x * n_y)) - 1))
    pairs = list(shift_pairs(n_x, n_y))
    return BipartiteGraph.from_mask(n_x, n_y, mask), draw(st.sampled_from(pairs))


def test_shift_examples():
    g = make_graph(2, 2, [(1, 2), (1, 3), (0, 2)])
    assert shift_xy(g, (0, 1)).edges() == [(0, 2), (0, 3), (1, 2)]
    h = make_graph(2, 2, [(0, 3), (1, 3)])
    assert shift_xy(h, (2, 3)).edges() == [(0, 2), (1, 2)]
    assert shift_xy(h, ShiftPair(0, 1)) is h


def test_shift_errors():
    g = BipartiteGraph.complete(2, 2)
    with pytest.raises(InvalidPair):
        shift_xy(g, (1, 1))
    with pytest.raises(InvalidPair):
        shift_xy(g, (2, 9))
    with pytest.raises(SamePartViolation):
        shift_xy(g, (1, 2))


@given(graph_and_pair())
def test_shift_matches_edge_definition(case):
    g, p = case
    assert shift_xy(g, p) == naive_shift(g, p.x, p.y)


@given(graph_and_pair())
def test_shift_preserves_edges_and_does_not_lower_rho(case):
    g, p = case
    s = shift_xy(g, p)
    assert s.num_edges == g.num_edges
    assert rho(s) >= rho(g) - 1e-9


@given(graph_and_pair(4))
def test_shift_equal_rho_connected_means_isomorphic(case):
    g, p = case
    s = shift_xy(g, p)
    if g.is_connected() and abs(rho(s) - rho(g)) <= 1e-9:
        assert is_isomorphic(g, s)


def test_shift_pairs_order():
    assert [(p.x, p.y) for p in shift_pairs(2, 3)] == [(0, 1), (2, 3), (2, 4), (3, 4)]


def test_staircase_equals_fixpoint_exhaustive():
    for g in enumerate_graphs(3, 3):
        assert is_bi_shifted(g) == is_shift_fixpoint(g)
    for g in enumerate_graphs(2, 4):
        assert is_bi_shifted(g) == is_shift_fixpoint(g)


def staircase_count(n_x, n_y):
    # non-increasing sequences of n_x row lengths in 0..n_y
    return len(list(itertools.combinations_with_replacement(range(n_y + 1), n_x)))


@pytest.mark.parametrize("parts", [(2, 2), (3, 3), (2, 4), (3, 2)])
def test_number_of_bi_shifted_graphs(parts):
    assert sum(is_bi_shifted(g) for g in enumerate_graphs(*parts)) == staircase_count(*parts)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**36 - 1))
def test_bi_shift_output(n_x, n_y, bits):
    g = BipartiteGraph.from_mask(n_x, n_y, bits & ((1 << (n_x * n_y)) - 1))
    s = bi_shift(g)
    assert is_bi_shifted(s)
    assert s.num_edges == g.num_edges
    assert bi_shift(s) == s
    assert rho(s) >= rho(g) - 1e-9


def test_bi_shift_fixed_on_staircase():
    g = make_graph(3, 3, [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (2, 3)])
    assert is_bi_shifted(g) and bi_shift(g) == g


def test_bi_shift_custom_order_still_staircase():
    rev = list(shift_pairs(3, 3))[::-1]
    for g in enumerate_graphs(3, 3):
        assert is_bi_shifted(bi_shift(g, rev))
