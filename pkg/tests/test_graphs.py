import pytest
from hypothesis import given

from ecdesigns import constructions as C

from ecdesigns.graphs import (
    Graph,
    GraphError,
    bits,
    build_big,
    build_s_big,
    complement,
    degree_stats,
    induced_subgraph,
    intersection_matrix,
)
from ecdesigns.paper_suite import derived_big_matches
from strategies import designs, graphs


def test_graph_invariants_enforced():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))  # not symmetric
    with pytest.raises(GraphError):
        Graph(2, (0b01, 0))  # self-loop
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])


def test_big_of_pairs_is_cocktail_party():
    G = build_big(C.complete_design(4, 2))
    assert G.n == 6
    assert degree_stats(G).min_degree == degree_stats(G).max_degree == 4
    # each pair is disjoint from exactly its complementary pair
    blocks = C.complete_design(4, 2).blocks
    for u in range(6):
        (w,) = bits(complement(G).rows[u])
        assert set(blocks[u]).isdisjoint(blocks[w])


def test_big_degrees(sqs8, netto):
    st8 = degree_stats(build_big(sqs8))
    assert (st8.n, st8.min_degree, st8.max_degree) == (14, 12, 12)
    st13 = degree_stats(build_big(netto))
    assert (st13.n, st13.min_degree, st13.max_degree, st13.is_connected) == (26, 15, 15, True)


def test_zero_big_of_sqs8_is_perfect_matching(sqs8):
    G = build_s_big(sqs8, {0})
    assert all(G.degree(u) == 1 for u in range(G.n))
    assert G.edge_count() == 7


@given(designs())
def test_s_big_with_all_sizes_is_big(D):
    top = max(D.block_sizes, default=0)
    assert build_s_big(D, range(1, top + 1)) == build_big(D)


@given(designs())
def test_s_big_partition(D):
    top = max(D.block_sizes, default=0)
    S = {0, 2}
    G1 = build_s_big(D, S)
    G2 = build_s_big(D, set(range(top + 1)) - S)
    assert all(a & b == 0 for a, b in zip(G1.rows, G2.rows))
    full = Graph.from_edges(D.b, [(u, w) for u in range(D.b) for w in range(u + 1, D.b)])
    assert tuple(a | b for a, b in zip(G1.rows, G2.rows)) == full.rows


def test_intersection_matrix_diagonal(netto):
    M = intersection_matrix(netto)
    assert all(M[i][i] == 3 for i in range(netto.b))
    assert all(M[i][j] in (0, 1) for i in range(26) for j in range(26) if i != j)


@given(graphs())
def test_complement_involution(G):
    assert complement(complement(G)) == G


def test_complement_of_edgeless():
    E = Graph(5, (0,) * 5)
    K = complement(E)
    assert K.edge_count() == 10
    assert degree_stats(K).max_degree == 4 and degree_stats(K).is_connected


def test_complement_of_one_big_is_zero_two_big(sqs8, sqs16):
    for D in (sqs8, sqs16):
        assert complement(build_s_big(D, {1})) == build_s_big(D, {0, 2})


@given(graphs())
def test_induced_full_and_single(G):
    sub, labels = induced_subgraph(G, range(G.n))
    assert sub == G and labels == list(range(G.n))
    if G.n:
        one, lab = induced_subgraph(G, [G.n - 1])
        assert one.n == 1 and one.edge_count() == 0 and lab == [G.n - 1]


def test_induced_out_of_range():
    with pytest.raises(GraphError):
        induced_subgraph(Graph(2, (0, 0)), [2])


def test_derived_big_lemma_all_points(sqs16):
    assert all(derived_big_matches(sqs16, x) for x in range(16))


@given(designs(max_v=8, max_b=10, min_size=2))
def test_derived_big_lemma_on_random_designs(D):
    # structural identity, holds for any set system with blocks of size >= 2
    if not D.blocks or min(D.block_sizes) < 2:
        return
    for x in range(D.v):
        assert derived_big_matches(D, x)


def test_degree_stats_connectivity():
    two_edges = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert not degree_stats(two_edges).is_connected
    K = complement(Graph(6, (0,) * 6))
    assert degree_stats(K).max_degree == 5
