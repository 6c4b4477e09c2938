"""Theorem table and bound checks comparing solver output with known results.

Each theorem is data: an id, a formula, a predicate deciding whether it
applies to an instance and a function producing ``(lhs, rhs, passed)``.
Results with unknown asymptotic constants are carried as report-only rows
(``applicable=False``) so they are never turned into asserted numbers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

from .graph import MAX_TREE_N, Graph, GraphStats, contains_subtree, enumerate_trees, graph_stats, is_tree


@dataclass
class Instance:
    """Everything the theorem table may look at for one graph."""

    g: Graph
    zeta: int
    stats: GraphStats
    zeta_star: int | None = None
    beta: int | None = None
    chi: int | None = None
    pw: int | None = None
    family: str | None = None  # star, hypercube, projective, affine, sts, bibd, polarity, kneser
    params: dict = field(default_factory=dict)
    t3: Graph | None = None


@dataclass(frozen=True)
class Theorem:
    id: str
    statement: str
    applies: Callable[[Instance], bool]
    evaluate: Callable[[Instance], tuple]
    report_only: bool = False


@dataclass
class BoundEntry:
    theorem_id: str
    statement: str
    applicable: bool
    lhs: object
    rhs: object
    passed: bool | None
    details: str = ""

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem_id,
            "statement": self.statement,
            "applicable": self.applicable,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
            "details": self.details,
        }


@dataclass
class BoundReport:
    name: str
    entries: list[BoundEntry]

    @property
    def summary(self) -> dict:
        app = [e for e in self.entries if e.applicable]
        return {
            "entries": len(self.entries),
            "applicable": len(app),
            "passed": sum(1 for e in app if e.passed),
            "failed": sum(1 for e in app if not e.passed),
            "report_only": len(self.entries) - len(app),
        }

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries if e.applicable)

    def failures(self) -> list[BoundEntry]:
        return [e for e in self.entries if e.applicable and not e.passed]

    def to_dict(self) -> dict:
        return {"name": self.name, "entries": [e.to_dict() for e in self.entries],
                "summary": self.summary}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _has(*names):
    return lambda I: all(getattr(I, x) is not None for x in names)


def _fam(name):
    return lambda I: I.family == name


def _is_star(I: Instance) -> bool:
    g = I.g
    if I.family == "star":
        return True
    return g.n >= 2 and g.edge_count == g.n - 1 and any(g.degree(v) == g.n - 1 for v in range(g.n))


def _tree_char(I: Instance):
    has_t3 = contains_subtree(I.g, I.t3)
    return (I.zeta == 2, has_t3, (I.zeta == 2) == has_t3)


def _kneser(I: Instance):
    k, n = I.params["k"], I.params["n"]
    if k % 2 == 0:
        return (I.zeta, f"{n / 2 + n / k:.3f} + O(1)", None)
    lo = n / 2 + n / k - k / 2 - 1
    return (I.zeta, f"[{lo:.3f}, {n / 2 + n / k + n / (2 * k):.3f} + O(1)]", None)


def _log2c(d: int) -> int:
    return math.ceil(math.log2(d)) if d > 1 else 0


THEOREMS: list[Theorem] = [
    Theorem("range", "1 <= zeta <= max(1, n-1)", lambda I: True,
            lambda I: (I.zeta, max(1, I.g.n - 1), 1 <= I.zeta <= max(1, I.g.n - 1))),
    Theorem("star", "zeta(K_{1,n}) = 1", _is_star, lambda I: (I.zeta, 1, I.zeta == 1)),
    Theorem("star-metric-dimension", "beta(K_{1,n}) = n-1",
            lambda I: _is_star(I) and I.beta is not None and I.g.n >= 3,
            lambda I: (I.beta, I.g.n - 2, I.beta == I.g.n - 2)),
    # n = 1 excluded: the empty probe set resolves K_1 while zeta >= 1 by definition.
    Theorem("metric-dimension", "zeta <= beta", lambda I: I.beta is not None and I.g.n >= 2,
            lambda I: (I.zeta, I.beta, I.zeta <= I.beta)),
    Theorem("tree", "tree T: zeta(T) <= 2", lambda I: is_tree(I.g),
            lambda I: (I.zeta, 2, I.zeta <= 2)),
    Theorem("tree-T3", "tree T: zeta(T) = 2 iff T contains T3",
            lambda I: is_tree(I.g) and I.t3 is not None, _tree_char),
    Theorem("chromatic", "chi <= 3^zeta", _has("chi"),
            lambda I: (I.chi, 3 ** I.zeta, I.chi <= 3 ** I.zeta)),
    Theorem("no-backtrack-chromatic", "zeta* = 1 implies chi <= 4",
            lambda I: I.zeta_star == 1 and I.chi is not None, lambda I: (I.chi, 4, I.chi <= 4)),
    Theorem("no-backtrack-order", "zeta* <= zeta", _has("zeta_star"),
            lambda I: (I.zeta_star, I.zeta, I.zeta_star <= I.zeta)),
    Theorem("max-degree", "zeta <= floor((D+1)^2/4) + 1", lambda I: True,
            lambda I: (I.zeta, (I.stats.max_degree + 1) ** 2 // 4 + 1,
                       I.zeta <= (I.stats.max_degree + 1) ** 2 // 4 + 1)),
    Theorem("cubic", "D = 3 implies zeta <= 3", lambda I: I.stats.max_degree == 3,
            lambda I: (I.zeta, 3, I.zeta <= 3)),
    # n = 1 excluded: pw(K_1) = 0.
    Theorem("pathwidth", "zeta <= pw", lambda I: I.pw is not None and I.g.n >= 2,
            lambda I: (I.zeta, I.pw, I.zeta <= I.pw)),
    Theorem("hypercube", "ceil(log2 d) <= zeta(Q_d) <= ceil(log2 d) + 2", _fam("hypercube"),
            lambda I: (I.zeta, [_log2c(I.params["d"]), _log2c(I.params["d"]) + 2],
                       _log2c(I.params["d"]) <= I.zeta <= _log2c(I.params["d"]) + 2)),
    Theorem("projective-plane", "zeta(G(PG(2,q))) = q + 1", _fam("projective"),
            lambda I: (I.zeta, I.params["q"] + 1, I.zeta == I.params["q"] + 1)),
    Theorem("bibd", "BIBD(v,b,r,k,1): zeta <= 2r + k - 3",
            lambda I: "design" in I.params and I.params["design"][4] == 1,
            lambda I: (I.zeta, 2 * I.params["design"][2] + I.params["design"][3] - 3,
                       I.zeta <= 2 * I.params["design"][2] + I.params["design"][3] - 3)),
    Theorem("symmetric-bibd", "symmetric BIBD(v,v,k,k,1): zeta = k",
            lambda I: "design" in I.params and I.params["design"][0] == I.params["design"][1]
            and I.params["design"][4] == 1,
            lambda I: (I.zeta, I.params["design"][3], I.zeta == I.params["design"][3])),
    Theorem("affine-plane", "zeta(G(AG(2,q))) = q", _fam("affine"),
            lambda I: (I.zeta, I.params["q"], I.zeta == I.params["q"])),
    Theorem("sts", "STS(v), v > 9: floor((v-2)/8) <= zeta <= (v+1)/2",
            lambda I: I.family == "sts" and I.params["v"] > 9,
            lambda I: (I.zeta, [(I.params["v"] - 2) // 8, (I.params["v"] + 1) / 2],
                       (I.params["v"] - 2) // 8 <= I.zeta <= (I.params["v"] + 1) / 2)),
    Theorem("sts-asymptotic", "STS(v): zeta <= (1+o(1)) v/3", _fam("sts"),
            lambda I: (I.zeta, f"{I.params['v'] / 3:.3f} (1+o(1))", None), report_only=True),
    Theorem("polarity", "polarity graph of order q^2+q+1: (2q-5)/3 <= zeta <= 2q-1",
            _fam("polarity"),
            lambda I: (I.zeta, [(2 * I.params["q"] - 5) / 3, 2 * I.params["q"] - 1],
                       (2 * I.params["q"] - 5) / 3 <= I.zeta <= 2 * I.params["q"] - 1)),
    Theorem("kneser", "K(k,n), n >= 3k: zeta = n/2 + n/k + O(1) (k even)",
            lambda I: I.family == "kneser" and I.params["n"] >= 3 * I.params["k"], _kneser,
            report_only=True),
]


def check_bounds(g: Graph, zeta: int, zeta_star: int | None = None, stats: GraphStats | None = None,
                 beta: int | None = None, chi: int | None = None, pw: int | None = None,
                 family: str | None = None, params: dict | None = None, t3: Graph | None = None,
                 name: str = "", theorems: list[Theorem] | None = None) -> BoundReport:
    inst = Instance(g, zeta, stats or graph_stats(g), zeta_star, beta, chi, pw, family,
                    dict(params or {}), t3)
    entries = []
    for th in theorems or THEOREMS:
        if not th.applies(inst):
            continue
        lhs, rhs, ok = th.evaluate(inst)
        if th.report_only:
            entries.append(BoundEntry(th.id, th.statement, False, lhs, rhs, None, "report only"))
        else:
            entries.append(BoundEntry(th.id, th.statement, True, lhs, rhs, bool(ok)))
    return BoundReport(name, entries)


# --------------------------------------------------------------------- T3


@dataclass
class T3Report:
    max_n: int
    trees: int
    zeta_counts: dict[int, int]
    minimal: list[Graph]
    biconditional: bool | None
    counterexamples: list[str]

    def to_dict(self) -> dict:
        from .graph import encode_graph6
        return {
            "max_n": self.max_n,
            "trees": self.trees,
            "zeta_counts": {str(k): v for k, v in sorted(self.zeta_counts.items())},
            "minimal_zeta2_trees": [encode_graph6(t) for t in self.minimal],
            "minimal_count": len(self.minimal),
            "biconditional": self.biconditional,
            "counterexamples": self.counterexamples,
        }


def derive_T3(max_n: int = 8, **solve_kw) -> tuple[Graph | None, T3Report]:
    """Recover the minimal trees needing two cops from the exhaustive tree corpus."""
    from .graph import encode_graph6
    from .solver import localization_number

    if not 7 <= max_n <= MAX_TREE_N:
        raise ValueError(f"derive_T3 supports 7 <= max_n <= {MAX_TREE_N}")
    corpus = []
    for n in range(1, max_n + 1):
        for t in enumerate_trees(n):
            corpus.append((t, localization_number(t, k_max=max(1, t.n - 1), **solve_kw)))
    counts: dict[int, int] = {}
    for _, z in corpus:
        counts[z] = counts.get(z, 0) + 1
    two = [t for t, z in corpus if z == 2]
    minimal = [t for t in two
               if not any(o.n < t.n and contains_subtree(t, o) for o in two)]
    # no minimal tree at all means the corpus is too small to contain T3
    if len(minimal) != 1:
        return (minimal[0] if minimal else None,
                T3Report(max_n, len(corpus), counts, minimal, None, []))
    t3 = minimal[0]
    bad = [encode_graph6(t) for t, z in corpus if (z == 2) != contains_subtree(t, t3)]
    return t3, T3Report(max_n, len(corpus), counts, minimal, not bad, bad)
