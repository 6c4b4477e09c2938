import json

import pytest

from locgame.bounds import THEOREMS, check_bounds, derive_T3
from locgame.graph import Graph, complete_graph, hypercube_graph, path_graph, star_graph
from locgame.suites import corpus_suite, has_c4, hypercube_suite, tree_suite
from locgame.designs import polarity_graph


def _ids(report):
    return {e.theorem_id: e for e in report.entries}


def test_star_report():
    rep = check_bounds(star_graph(4), 1, 1, beta=3, chi=2, pw=1, family="star")
    ids = _ids(rep)
    assert rep.ok
    assert ids["star"].passed and ids["star-metric-dimension"].passed


def test_wrong_zeta_caught():
    rep = check_bounds(complete_graph(5), 4, beta=4, chi=5, pw=4)
    assert rep.ok
    rep = check_bounds(complete_graph(5), 5, beta=4, chi=5, pw=4)
    assert {e.theorem_id for e in rep.failures()} >= {"range", "metric-dimension", "pathwidth"}


def test_report_only_rows_are_not_asserted():
    from locgame.graph import kneser_graph
    rep = check_bounds(kneser_graph(2, 6), 3, family="kneser", params={"k": 2, "n": 6})
    row = _ids(rep)["kneser"]
    assert not row.applicable and row.passed is None
    assert rep.ok


def test_hypercube_row():
    rep = check_bounds(hypercube_graph(3), 3, family="hypercube", params={"d": 3})
    assert _ids(rep)["hypercube"].rhs == [2, 4]


def test_report_json():
    rep = check_bounds(path_graph(3), 1)
    data = json.loads(rep.to_json())
    assert data["summary"]["failed"] == 0


def test_theorem_ids_unique():
    ids = [t.id for t in THEOREMS]
    assert len(ids) == len(set(ids))


def test_no_t3_on_small_trees():
    t3, rep = derive_T3(8)
    assert t3 is None and rep.zeta_counts == {1: 48}


def test_derived_t3_on_larger_trees():
    t3, rep = derive_T3(11)
    assert rep.biconditional is True and len(rep.minimal) == 1
    assert t3.n == 10 and sorted(t3.degree(v) for v in range(10)) == [1] * 6 + [3] * 4
    with pytest.raises(ValueError):
        derive_T3(13)


def test_suites_run():
    res = corpus_suite(4, 10)
    assert res.ok and res.exit_code() == 0
    assert "chi <= 3^zeta" in res.chart()
    assert hypercube_suite(2).ok
    assert tree_suite(6).ok


def test_has_c4():
    assert not has_c4(polarity_graph(3))
    assert has_c4(hypercube_graph(2))
