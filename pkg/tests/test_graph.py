import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locgame.graph import (Graph, GraphError, all_pairs_distances, bfs_distances, colex_subsets,
                           complete_bipartite_graph, complete_graph, contains_subtree, cycle_graph,
                           encode_graph6, enumerate_connected_graphs, enumerate_trees, generate,
                           girth, graph_stats, hypercube_graph, is_bipartite, is_tree,
                           kneser_graph, parse_graph6, path_graph, prufer_decode,
                           random_connected_graph, star_graph, tree_canonical_form)


@pytest.mark.parametrize("text, n, edges", [
    ("@", 1, []),
    ("A?", 2, []),
    ("A_", 2, [(0, 1)]),
    ("Bw", 3, [(0, 1), (0, 2), (1, 2)]),
    ("Bg", 3, [(0, 1), (1, 2)]),
])
def test_graph6_known_strings(text, n, edges):
    g = parse_graph6(text)
    assert g.n == n and g.edges() == edges
    assert encode_graph6(g) == text


def test_graph6_petersen():
    g = kneser_graph(2, 5)
    assert g.edge_count == 15
    assert parse_graph6(encode_graph6(g)) == g


@pytest.mark.parametrize("bad", ["", "Bx~", "B", "A`", "Bw?", "~"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(GraphError):
        parse_graph6(bad)


def test_graph6_long_header():
    g = path_graph(62)
    assert parse_graph6(encode_graph6(g)) == g
    with pytest.raises(GraphError):
        encode_graph6(path_graph(63))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 30), st.integers(0, 2**32), st.floats(0, 1))
def test_graph6_roundtrip(n, seed, p):
    rng = random.Random(seed)
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    g = Graph.from_edges(n, edges)
    assert parse_graph6(encode_graph6(g)) == g


def test_from_edges_validation():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))


def test_distances():
    g = path_graph(4)
    assert bfs_distances(g, 0) == [0, 1, 2, 3]
    g2 = Graph.from_edges(3, [(0, 1)])
    dm = all_pairs_distances(g2)
    assert dm[0, 2] == math.inf and dm[1, 0] == 1


def test_closed_neighborhood_and_components():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    assert g.closed_neighborhood(0b1) == 0b11
    assert g.components() == [0b00111, 0b11000]
    assert not g.is_connected()
    h = g.induced_subgraph([3, 4])
    assert h.n == 2 and h.edges() == [(0, 1)]


def test_generators():
    assert cycle_graph(5).edge_count == 5
    s = star_graph(4)
    assert s.n == 5 and s.degree(0) == 4
    assert complete_graph(5).edge_count == 10
    assert complete_bipartite_graph(2, 3).edge_count == 6
    q3 = hypercube_graph(3)
    assert q3.n == 8 and q3.edge_count == 12 and q3.labels[5] == "101"
    assert generate("kneser", [2, 5]) == kneser_graph(2, 5)
    with pytest.raises(GraphError):
        generate("nope", [3])


def test_kneser_colex_labels():
    assert colex_subsets(4, 2) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    g = kneser_graph(2, 5)
    assert g.labels[0] == "{1,2}"
    assert {g.degree(v) for v in range(g.n)} == {3}


def test_stats():
    st_ = graph_stats(kneser_graph(2, 5))
    assert (st_.n, st_.edge_count, st_.max_degree, st_.diameter, st_.girth) == (10, 15, 3, 2, 5)
    assert not st_.is_bipartite
    assert is_bipartite(hypercube_graph(3)) and girth(path_graph(4)) == math.inf
    d = graph_stats(path_graph(3)).to_dict()
    assert d["girth"] is None and d["diameter"] == 2


def test_connected_graph_counts():
    # labelled connected graphs
    assert [sum(1 for _ in enumerate_connected_graphs(n)) for n in range(1, 6)] == [1, 1, 4, 38, 728]


def test_random_connected_is_seeded():
    a = [encode_graph6(random_connected_graph(7, random.Random(3))) for _ in range(3)]
    assert len(set(a)) == 1
    assert random_connected_graph(6, random.Random(1)).is_connected()


def test_tree_counts():
    assert [sum(1 for _ in enumerate_trees(n)) for n in range(1, 10)] == [1, 1, 1, 2, 3, 6, 11, 23, 47]


@pytest.mark.parametrize("n", range(2, 8))
def test_trees_match_prufer_decoding(n):
    forms = {tree_canonical_form(prufer_decode(seq, n))
             for seq in itertools.product(range(n), repeat=n - 2)}
    assert forms == {tree_canonical_form(t) for t in enumerate_trees(n)}


def test_canonical_form_is_label_invariant():
    a = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (1, 4)])
    b = Graph.from_edges(5, [(4, 3), (3, 2), (2, 1), (3, 0)])
    assert tree_canonical_form(a) == tree_canonical_form(b)
    assert tree_canonical_form(a) != tree_canonical_form(path_graph(5))
    assert is_tree(a) and not is_tree(cycle_graph(4))


def test_contains_subtree():
    spider = Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    claw = star_graph(3)
    assert contains_subtree(spider, claw)
    assert contains_subtree(spider, path_graph(5))
    assert not contains_subtree(spider, path_graph(6))
    assert not contains_subtree(path_graph(7), claw)
    assert not contains_subtree(claw, spider)
    assert contains_subtree(star_graph(5), star_graph(4))
