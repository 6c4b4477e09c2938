import itertools

import pytest

from locgame import designs
from locgame.designs import (DesignError, SUPPORTED_ORDERS, absolute_points, affine_plane,
                             format_design, incidence_graph, make_field, orthogonal_polarity,
                             parse_design, polarity_graph, projective_plane,
                             steiner_triple_system, validate_design)
from locgame.graph import graph_stats


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_field_axioms(q):
    F = make_field(q)
    els = range(q)
    for a in els:
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a, b in itertools.product(els, els):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        if a and b:
            assert F.mul(a, b) != 0
    if q <= 9:
        for a, b, c in itertools.product(els, els, els):
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def test_unsupported_field():
    with pytest.raises(DesignError):
        make_field(6)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_projective_planes(q):
    d = projective_plane(q)
    n = q * q + q + 1
    assert d.params == (n, n, q + 1, q + 1, 1)
    assert validate_design(d).ok


@pytest.mark.parametrize("q", [2, 3, 4])
def test_affine_planes(q):
    d = affine_plane(q)
    assert d.params == (q * q, q * q + q, q + 1, q, 1)
    assert validate_design(d).ok


@pytest.mark.parametrize("v", [7, 9, 13, 15, 19, 21, 25])
def test_steiner_triple_systems(v):
    d = steiner_triple_system(v)
    assert d.params == (v, v * (v - 1) // 6, (v - 1) // 2, 3, 1)
    assert validate_design(d).ok


def test_sts_rejects_bad_order():
    with pytest.raises(DesignError):
        steiner_triple_system(11)


def test_validator_catches_missing_block():
    rep = validate_design(projective_plane(2).without_block(0))
    assert not rep.ok
    assert "pair coverage" in rep.failed()


def test_incidence_graph():
    d = projective_plane(2)
    g = incidence_graph(d, designs.projective_line_labels(2))
    st = graph_stats(g)
    assert (g.n, g.edge_count, st.girth, st.diameter, st.is_bipartite) == (14, 21, 6, 3, True)
    assert g.labels[7] == "<0:0:1>"
    assert incidence_graph(d).labels[7] == "B0"


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_polarity_graph(q):
    g = polarity_graph(q)
    st = graph_stats(g)
    assert g.n == q * q + q + 1 and st.diameter == 2
    degs = [g.degree(v) for v in range(g.n)]
    assert set(degs) == {q, q + 1}
    assert degs.count(q) == q + 1 == len(absolute_points(q))
    assert orthogonal_polarity(q).is_symmetric(projective_plane(q))


def test_polarity_q2_edges():
    assert polarity_graph(2).edge_count == 9


def test_design_text_roundtrip():
    d = affine_plane(3)
    text = format_design(d)
    assert text.splitlines()[0] == "9 12 4 3 1"
    back = parse_design(text)
    assert back.blocks == d.blocks and back.params == d.params
    with pytest.raises(DesignError):
        parse_design("3 1 1 2 1\n0 1 9\n")
