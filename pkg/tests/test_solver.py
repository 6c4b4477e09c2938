import json
import random

import pytest

from locgame.designs import affine_plane, incidence_graph, projective_plane
from locgame.graph import (Graph, all_pairs_distances, complete_graph, cycle_graph,
                           enumerate_connected_graphs, hypercube_graph, path_graph,
                           random_connected_graph, star_graph)
from locgame.solver import (CAPTURED, BoundExceeded, EvidenceError, GameError, RobberCertificate,
                            StrategyNode, Variant, available_backends, check_certificate,
                            check_strategy, cop_win, expand, extract_certificate,
                            extract_strategy, localization_number, partition_by_probe, probe_sets,
                            reference_cop_win, solve_localization, territory, verify_certificate,
                            verify_evidence, verify_strategy)
from locgame.solver.evidence import dumps, loads
from locgame.solver.game import format_vector, parse_vector

BOTH = [Variant.STANDARD, Variant.NO_BACKTRACK]


def test_variant_parse():
    assert Variant.parse("no-backtrack") is Variant.NO_BACKTRACK
    assert Variant.parse(Variant.STANDARD) is Variant.STANDARD
    with pytest.raises(ValueError):
        Variant.parse("sideways")


def test_probe_sets_order():
    assert probe_sets(4, 2)[:3] == [(0, 1), (0, 2), (0, 3)]
    assert probe_sets(2, 5) == [(0, 1)]


def test_vector_text():
    vec = (0, 2, float("inf"))
    assert format_vector(vec) == "0,2,inf"
    assert parse_vector("0,2,inf") == vec


def test_partition_path():
    g = path_graph(5)
    dm = all_pairs_distances(g)
    parts = partition_by_probe(g, dm, g.full_mask, (2,))
    assert parts == [((0,), 0b00100), ((1,), 0b01010), ((2,), 0b10001)]
    parts = partition_by_probe(g, dm, 0b11100, (0, 4))
    assert [m for _, m in parts] == [0b00100, 0b01000, 0b10000]


def test_expand():
    g = path_graph(5)
    assert expand(g, 0b00100) == 0b01110
    assert expand(g, 0b00100, Variant.NO_BACKTRACK, (3,)) == 0b00110
    with pytest.raises(GameError):
        expand(g, 0b00001, Variant.NO_BACKTRACK, (0, 1))


def test_k3_cases():
    v1 = cop_win(complete_graph(3), 1)
    assert not v1.cop_win and verify_evidence(complete_graph(3), v1)
    v2 = cop_win(complete_graph(3), 2)
    assert v2.cop_win and verify_evidence(complete_graph(3), v2)


def test_star_strategy_depth():
    g = star_graph(5)
    tree = extract_strategy(g, 1)
    assert check_strategy(g, 1, Variant.STANDARD, tree) == tree.depth <= 5


def test_small_known_values():
    assert localization_number(path_graph(6)) == 1
    assert localization_number(cycle_graph(5)) == 2
    assert localization_number(complete_graph(5)) == 4
    assert localization_number(Graph(1, (0,))) == 1


def test_disconnected_takes_max():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5), (3, 5)])
    res = solve_localization(g)
    assert res.zeta == 2 and sorted(res.components) == [1, 2]
    with pytest.raises(GameError):
        cop_win(g, 1)


def test_bound_exceeded():
    with pytest.raises(BoundExceeded) as info:
        solve_localization(complete_graph(4), k_max=2)
    assert [v.cop_win for v in info.value.verdicts] == [False, False]


def _corpus(n_max):
    for n in range(1, n_max + 1):
        yield from enumerate_connected_graphs(n)


@pytest.mark.parametrize("variant", BOTH)
def test_matches_reference_small_corpus(variant):
    for g in _corpus(5):
        for k in range(1, 4):
            assert cop_win(g, k, variant, evidence=False).cop_win == reference_cop_win(g, k, variant)


def test_matches_reference_random():
    rng = random.Random(7)
    for i in range(200):
        g = random_connected_graph(6 + i % 2, rng)
        variant = BOTH[i % 2]
        for k in (1, 2):
            assert cop_win(g, k, variant, evidence=False).cop_win == reference_cop_win(g, k, variant)


def test_unpruned_search_agrees():
    from locgame.solver import Arena
    for g in list(_corpus(5))[::7]:
        for k in (1, 2):
            a, b = Arena(g, k), Arena(g, k)
            assert a.search() == b.search(prune=False)


@pytest.mark.parametrize("variant", BOTH)
def test_evidence_roundtrip(variant):
    for g in [cycle_graph(6), star_graph(4), hypercube_graph(3), complete_graph(4)]:
        for k in (1, 2):
            v = cop_win(g, k, variant)
            assert verify_evidence(g, v)
            back = loads(dumps(v.evidence))
            assert dumps(back) == dumps(v.evidence)
            assert (verify_strategy if v.cop_win else verify_certificate)(g, k, variant, back)


def test_dot_output():
    g = cycle_graph(4)
    tree = extract_strategy(g, 2)
    dot = tree.to_dot(["a", "b", "c", "d"])
    assert dot.startswith("digraph strategy") and "captured" in dot
    cert = extract_certificate(g, 1)
    assert cert.to_dot().startswith("graph certificate")


def test_tampered_strategy_rejected():
    g = cycle_graph(5)
    tree = extract_strategy(g, 2)
    root = tree.nodes[tree.root]
    other = next(p for p in probe_sets(5, 2) if p != root.probe)
    tree.nodes[tree.root] = StrategyNode(root.territory, other, root.children)
    with pytest.raises(EvidenceError):
        check_strategy(g, 2, Variant.STANDARD, tree)


def test_strategy_with_missing_capture_rejected():
    g = star_graph(4)
    tree = extract_strategy(g, 1)
    node = tree.nodes[tree.root]
    assert any(c != CAPTURED for _, c in node.children)
    children = tuple((vec, CAPTURED) for vec, _ in node.children)
    tree.nodes[tree.root] = StrategyNode(node.territory, node.probe, children)
    assert not verify_strategy(g, 1, Variant.STANDARD, tree)


def test_strategy_for_wrong_instance_rejected():
    tree = extract_strategy(complete_graph(3), 2)
    assert not verify_strategy(complete_graph(3), 2, Variant.NO_BACKTRACK, tree)
    assert not verify_strategy(complete_graph(3), 3, Variant.STANDARD, tree)


def test_certificate_checks():
    g = cycle_graph(5)
    cert = extract_certificate(g, 1)
    check_certificate(g, 1, Variant.STANDARD, cert)
    empty = RobberCertificate(5, 1, Variant.STANDARD, frozenset())
    assert not verify_certificate(g, 1, Variant.STANDARD, empty)
    # probing 0 splits {0, 1} into singletons, so it cannot be a safe state
    weak = RobberCertificate(5, 1, Variant.STANDARD, frozenset({g.full_mask, territory([0, 1])}))
    assert not verify_certificate(g, 1, Variant.STANDARD, weak)
    with pytest.raises(GameError):
        extract_certificate(g, 2)


def test_certificate_rejects_cop_win_instance():
    g = path_graph(4)
    fake = RobberCertificate(4, 1, Variant.STANDARD, frozenset({g.full_mask}))
    assert not verify_certificate(g, 1, Variant.STANDARD, fake)


def test_certificate_json_shape():
    cert = extract_certificate(complete_graph(3), 1)
    data = json.loads(dumps(cert))
    assert data["type"] == "certificate" and [0, 1, 2] in data["safe_states"]


def test_planes_small():
    assert localization_number(incidence_graph(affine_plane(2))) == 2
    fano = incidence_graph(projective_plane(2))
    v2 = cop_win(fano, 2)
    assert not v2.cop_win and verify_evidence(fano, v2)


@pytest.mark.parametrize("variant", BOTH)
def test_threads_do_not_change_results(variant):
    g = hypercube_graph(3)
    for k in (2, 3):
        a = cop_win(g, k, variant, threads=1)
        b = cop_win(g, k, variant, threads=4)
        assert a.cop_win == b.cop_win and dumps(a.evidence) == dumps(b.evidence)


@pytest.mark.skipif(len(available_backends()) < 2, reason="compiled kernel not built")
def test_backends_agree():
    rng = random.Random(11)
    for i in range(40):
        g = random_connected_graph(7, rng)
        for k in (1, 2):
            for variant in BOTH:
                a = cop_win(g, k, variant, backend="python")
                b = cop_win(g, k, variant, backend="cython")
                assert a.cop_win == b.cop_win and dumps(a.evidence) == dumps(b.evidence)


@pytest.mark.skipif(len(available_backends()) < 2, reason="compiled kernel not built")
def test_kernels_identical_successors():
    from locgame.solver._backend import kernel_class
    rng = random.Random(5)
    for _ in range(30):
        g = random_connected_graph(8, rng)
        dm = all_pairs_distances(g).dist
        dist = [[255 if d == float("inf") else int(d) for d in row] for row in dm]
        closed = [g.adj[v] | 1 << v for v in range(g.n)]
        for nb in (False, True):
            probes = probe_sets(g.n, 2)
            kp = kernel_class("python")(g.n, dist, closed, probes, nb)
            kc = kernel_class("cython")(g.n, dist, closed, probes, nb)
            for t in (g.full_mask, g.full_mask & 0b10110110, 0b111):
                assert kp.successors(t) == kc.successors(t)
