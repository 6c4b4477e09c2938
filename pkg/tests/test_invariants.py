import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locgame.graph import (Graph, complete_bipartite_graph, complete_graph, cycle_graph,
                           enumerate_connected_graphs, hypercube_graph, kneser_graph, path_graph,
                           random_connected_graph, star_graph)
from locgame.invariants import (SizeLimitExceeded, brute_force_metric_dimension, chromatic_number,
                                find_coloring, is_proper_coloring, metric_dimension, pathwidth,
                                twin_classes, vertex_separation)


@pytest.mark.parametrize("g, beta", [
    (star_graph(5), 4), (path_graph(5), 1), (complete_graph(4), 3), (cycle_graph(6), 2),
    (kneser_graph(2, 5), 3), (hypercube_graph(3), 3), (Graph(1, (0,)), 0),
])
def test_metric_dimension_known(g, beta):
    assert metric_dimension(g) == beta


def test_metric_dimension_matches_brute_force():
    rng = random.Random(2)
    graphs = [g for n in range(2, 6) for g in enumerate_connected_graphs(n)][::5]
    graphs += [random_connected_graph(7, rng) for _ in range(30)]
    for g in graphs:
        assert metric_dimension(g) == brute_force_metric_dimension(g)


def test_twin_classes():
    classes = twin_classes(star_graph(3))
    assert sorted(map(sorted, classes)) == [[0], [1, 2, 3]]


@pytest.mark.parametrize("g, chi", [
    (kneser_graph(2, 5), 3), (cycle_graph(5), 3), (cycle_graph(6), 2), (complete_graph(5), 5),
    (complete_bipartite_graph(3, 3), 2), (Graph(1, (0,)), 1),
])
def test_chromatic_known(g, chi):
    assert chromatic_number(g) == chi
    col = find_coloring(g, chi)
    assert col is not None and is_proper_coloring(g, col)
    assert chi == 1 or find_coloring(g, chi - 1) is None


@pytest.mark.parametrize("g, pw", [
    (cycle_graph(4), 2), (complete_graph(5), 4), (path_graph(6), 1), (star_graph(4), 1),
    (hypercube_graph(3), 4), (Graph(1, (0,)), 0),
])
def test_pathwidth_known(g, pw):
    assert pathwidth(g) == vertex_separation(g) == pw


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_invariant_relations(seed):
    g = random_connected_graph(7, random.Random(seed))
    chi, pw = chromatic_number(g), pathwidth(g)
    assert chi <= pw + 1
    assert metric_dimension(g) <= g.n - 1


def test_size_limits():
    big = path_graph(25)
    with pytest.raises(SizeLimitExceeded):
        metric_dimension(big)
    with pytest.raises(SizeLimitExceeded):
        pathwidth(big)
