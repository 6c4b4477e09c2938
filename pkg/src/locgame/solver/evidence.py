"""Winning evidence for either player, its verifiers and serialisation.

A cop strategy is positional: the probe depends only on the current
territory, so the "tree" is stored as one node per territory and may share
subtrees.  Verification replays it against every robber choice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..graph import Graph, all_pairs_distances, bits
from .game import (GameError, Variant, check_probe, expand, format_vector, members,
                   parse_vector, partition_by_probe, probe_sets, territory)

CAPTURED = "captured"


class EvidenceError(GameError):
    """Structural problem in a strategy or certificate, naming the offending node."""


@dataclass(frozen=True)
class StrategyNode:
    territory: int
    probe: tuple[int, ...]
    children: tuple[tuple[tuple, object], ...]  # (distance vector, CAPTURED | child territory)


@dataclass
class StrategyTree:
    n: int
    k: int
    variant: Variant
    root: int
    nodes: dict[int, StrategyNode] = field(default_factory=dict)
    kind = "strategy"

    def node_depths(self) -> dict[int, int]:
        """Rounds until capture from each node against the worst robber."""
        memo: dict[int, int] = {}

        def d(t: int) -> int:
            if t not in memo:
                memo[t] = 1 + max((d(c) for _, c in self.nodes[t].children if c != CAPTURED),
                                  default=0)
            return memo[t]
        d(self.root)
        return memo

    @property
    def depth(self) -> int:
        return self.node_depths()[self.root]

    def to_json(self) -> dict:
        order = _bfs_order(self)
        ids = {t: i for i, t in enumerate(order)}
        return {
            "type": "strategy",
            "n": self.n,
            "k": self.k,
            "variant": self.variant.value,
            "depth": self.depth,
            "root": ids[self.root],
            "nodes": [
                {
                    "id": ids[t],
                    "territory": members(t),
                    "probe": list(self.nodes[t].probe),
                    "children": {format_vector(vec): (CAPTURED if c == CAPTURED else ids[c])
                                 for vec, c in self.nodes[t].children},
                }
                for t in order
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StrategyTree":
        if data.get("type") != "strategy":
            raise EvidenceError("not a strategy document")
        by_id = {node["id"]: territory(node["territory"]) for node in data["nodes"]}
        nodes = {}
        for node in data["nodes"]:
            t = by_id[node["id"]]
            children = tuple(
                (parse_vector(key), CAPTURED if c == CAPTURED else by_id[c])
                for key, c in node["children"].items())
            nodes[t] = StrategyNode(t, tuple(node["probe"]), children)
        return cls(data["n"], data["k"], Variant.parse(data["variant"]), by_id[data["root"]], nodes)

    def to_dot(self, labels=None) -> str:
        order = _bfs_order(self)
        ids = {t: i for i, t in enumerate(order)}
        name = (lambda v: labels[v]) if labels else str
        out = ["digraph strategy {", "  node [shape=box];", '  captured [shape=doublecircle];']
        for t in order:
            node = self.nodes[t]
            terr = ",".join(name(v) for v in bits(t))
            probe = ",".join(name(v) for v in node.probe)
            out.append(f'  n{ids[t]} [label="T={{{terr}}}\\nprobe {{{probe}}}"];')
            for vec, c in node.children:
                dst = "captured" if c == CAPTURED else f"n{ids[c]}"
                out.append(f'  n{ids[t]} -> {dst} [label="{format_vector(vec)}"];')
        out.append("}")
        return "\n".join(out) + "\n"


def _bfs_order(tree: StrategyTree) -> list[int]:
    order, seen = [tree.root], {tree.root}
    for t in order:
        for _, c in tree.nodes[t].children:
            if c != CAPTURED and c not in seen:
                seen.add(c)
                order.append(c)
    return order


@dataclass
class RobberCertificate:
    n: int
    k: int
    variant: Variant
    safe_states: frozenset[int]
    kind = "certificate"

    def to_json(self) -> dict:
        return {
            "type": "certificate",
            "n": self.n,
            "k": self.k,
            "variant": self.variant.value,
            "safe_states": sorted(members(t) for t in self.safe_states),
        }

    @classmethod
    def from_json(cls, data: dict) -> "RobberCertificate":
        if data.get("type") != "certificate":
            raise EvidenceError("not a certificate document")
        return cls(data["n"], data["k"], Variant.parse(data["variant"]),
                   frozenset(territory(s) for s in data["safe_states"]))

    def to_dot(self, labels=None) -> str:
        name = (lambda v: labels[v]) if labels else str
        out = ["graph certificate {"]
        for i, t in enumerate(sorted(self.safe_states, key=lambda m: (m.bit_count(), m))):
            out.append(f'  s{i} [label="{{{",".join(name(v) for v in bits(t))}}}"];')
        out.append("}")
        return "\n".join(out) + "\n"


def dumps(evidence) -> str:
    return json.dumps(evidence.to_json(), sort_keys=True, separators=(",", ":"))


def loads(text: str):
    data = json.loads(text)
    if data.get("type") == "strategy":
        return StrategyTree.from_json(data)
    return RobberCertificate.from_json(data)


# ------------------------------------------------------------------ building


def build_strategy(arena) -> StrategyTree:
    """Depth-minimal strategy from an arena (explored fully, ranks computed)."""
    arena.explore_full()
    arena.compute_ranks()
    if not arena.rank[0]:
        raise GameError("extract_strategy called on a robber-win instance")
    g, dm = arena.g, arena.dm
    tree = StrategyTree(g.n, arena.k, arena.variant, arena.root)
    stack = [arena.root]
    while stack:
        t = stack.pop()
        if t in tree.nodes:
            continue
        probe = arena.probes[arena.best_probe(arena.index[t])]
        children = []
        for vec, cls in partition_by_probe(g, dm, t, probe):
            if cls & (cls - 1) == 0:
                children.append((vec, CAPTURED))
            else:
                child = expand(g, cls, arena.variant, probe)
                children.append((vec, child))
                stack.append(child)
        tree.nodes[t] = StrategyNode(t, probe, tuple(children))
    return tree


def build_certificate(arena) -> RobberCertificate:
    if arena.won[0]:
        raise GameError("extract_certificate called on a cop-win instance")
    return RobberCertificate(arena.g.n, arena.k, arena.variant, frozenset(arena.robber_states()))


def extract_strategy(g: Graph, k: int, variant: Variant | str = Variant.STANDARD, **kw) -> StrategyTree:
    from .engine import Arena
    return build_strategy(Arena(g, k, variant, **kw))


def extract_certificate(g: Graph, k: int, variant: Variant | str = Variant.STANDARD,
                        **kw) -> RobberCertificate:
    from .engine import Arena
    arena = Arena(g, k, variant, **kw)
    arena.search()
    return build_certificate(arena)


# ----------------------------------------------------------------- verifying


def _classes(dm_rows, probe, t: int) -> list[tuple[tuple, int]]:
    groups: dict[tuple, int] = {}
    for v in bits(t):
        key = tuple(dm_rows[u][v] for u in probe)
        groups[key] = groups.get(key, 0) | 1 << v
    return sorted(groups.items())


def check_strategy(g: Graph, k: int, variant: Variant | str, tree: StrategyTree) -> int:
    """Raise ``EvidenceError`` unless ``tree`` wins against every robber; return its depth."""
    variant = Variant.parse(variant)
    if tree.n != g.n or tree.k != k or tree.variant is not variant:
        raise EvidenceError("strategy was built for a different instance")
    if tree.root != g.full_mask:
        raise EvidenceError("root territory is not V(G)")
    rows = all_pairs_distances(g).dist
    depth: dict[int, int] = {}
    on_path: set[int] = set()

    def visit(t: int) -> int:
        if t in depth:
            return depth[t]
        if t in on_path:
            raise EvidenceError(f"territory {members(t)} repeats along a play")
        node = tree.nodes.get(t)
        if node is None:
            raise EvidenceError(f"no node for territory {members(t)}")
        try:
            probe = check_probe(g.n, k, node.probe)
        except GameError as exc:
            raise EvidenceError(f"node {members(t)}: {exc}") from None
        expected = _classes(rows, probe, t)
        got = list(node.children)
        if [vec for vec, _ in expected] != sorted(vec for vec, _ in got):
            raise EvidenceError(f"node {members(t)}: edges do not match the probe partition")
        child_of = dict(got)
        on_path.add(t)
        best = 0
        for vec, cls in expected:
            c = child_of[vec]
            if cls & (cls - 1) == 0:
                if c != CAPTURED:
                    raise EvidenceError(f"node {members(t)}: singleton class {vec} not captured")
                continue
            if c == CAPTURED:
                raise EvidenceError(f"node {members(t)}: class {vec} has {cls.bit_count()} "
                                    "candidates but is marked captured")
            want = g.closed_neighborhood(cls)
            if variant is Variant.NO_BACKTRACK:
                want &= ~territory(probe)
            if c != want:
                raise EvidenceError(f"node {members(t)}: class {vec} leads to the wrong territory")
            best = max(best, visit(c))
        on_path.discard(t)
        depth[t] = best + 1
        return depth[t]

    return visit(tree.root)


def verify_strategy(g: Graph, k: int, variant: Variant | str, tree: StrategyTree) -> bool:
    try:
        check_strategy(g, k, variant, tree)
    except EvidenceError:
        return False
    return True


def check_certificate(g: Graph, k: int, variant: Variant | str, cert: RobberCertificate):
    """Raise ``EvidenceError`` unless ``cert`` is closed under every probe.

    For each safe territory and every probe some class of size >= 2 must
    expand to a territory containing a safe territory; exact membership is
    the usual case.  Containment suffices because a robber on a superset of
    a safe territory does at least as well.
    """
    variant = Variant.parse(variant)
    if cert.n != g.n or cert.k != k or cert.variant is not variant:
        raise EvidenceError("certificate was built for a different instance")
    safe = cert.safe_states
    if g.full_mask not in safe:
        raise EvidenceError("V(G) is not a safe state")
    for t in safe:
        if t & (t - 1) == 0 or t & ~g.full_mask:
            raise EvidenceError(f"safe state {members(t)} is not a territory of size >= 2")
    rows = all_pairs_distances(g).dist
    by_size = sorted(safe, key=int.bit_count)
    nb = variant is Variant.NO_BACKTRACK

    def covered(s: int) -> bool:
        if s in safe:
            return True
        return any(s & m == m for m in by_size)

    for t in sorted(safe):
        for probe in probe_sets(g.n, k):
            pm = territory(probe)
            escape = False
            for _, cls in _classes(rows, probe, t):
                if cls & (cls - 1) == 0:
                    continue
                s = g.closed_neighborhood(cls)
                if nb:
                    s &= ~pm
                if s & t == t or covered(s):
                    escape = True
                    break
            if not escape:
                raise EvidenceError(f"probe {probe} captures the robber from {members(t)}")


def verify_certificate(g: Graph, k: int, variant: Variant | str, cert: RobberCertificate) -> bool:
    try:
        check_certificate(g, k, variant, cert)
    except EvidenceError:
        return False
    return True


def verify_evidence(g: Graph, verdict) -> bool:
    ev = verdict.evidence
    if isinstance(ev, StrategyTree):
        return verdict.cop_win and verify_strategy(g, verdict.k, verdict.variant, ev)
    if isinstance(ev, RobberCertificate):
        return not verdict.cop_win and verify_certificate(g, verdict.k, verdict.variant, ev)
    return False
