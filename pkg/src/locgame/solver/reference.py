"""Unpruned oracle for the localization game.

Independent of the engine: territories are frozensets, distances come from
a separate BFS, every probe is tried and the cop-win set is grown by plain
Kleene iteration from the empty set.  Intended for n <= 10.
"""

from __future__ import annotations

import itertools
from collections import deque

from ..graph import Graph
from .game import GameError, Variant


def _distances(g: Graph) -> list[dict[int, int]]:
    nbrs = [[w for w in range(g.n) if g.adj[v] >> w & 1] for v in range(g.n)]
    out = []
    for s in range(g.n):
        d = {s: 0}
        q = deque([s])
        while q:
            v = q.popleft()
            for w in nbrs[v]:
                if w not in d:
                    d[w] = d[v] + 1
                    q.append(w)
        out.append(d)
    return out


def reference_cop_win(g: Graph, k: int, variant: Variant | str = Variant.STANDARD) -> bool:
    if k < 1:
        raise GameError("k must be >= 1")
    if not g.is_connected():
        raise GameError("reference_cop_win requires a connected graph")
    nb = Variant.parse(variant) is Variant.NO_BACKTRACK
    dist = _distances(g)
    nbrs = [{w for w in range(g.n) if g.adj[v] >> w & 1} | {v} for v in range(g.n)]
    probes = list(itertools.combinations(range(g.n), min(k, g.n)))
    start = frozenset(range(g.n))

    def moves(t: frozenset) -> list[list[frozenset]]:
        """Per probe, the territories the robber can reach (empty list: capture)."""
        out = []
        for probe in probes:
            groups: dict[tuple, set] = {}
            for v in t:
                groups.setdefault(tuple(dist[u].get(v, -1) for u in probe), set()).add(v)
            nxt = []
            for cls in groups.values():
                if len(cls) < 2:
                    continue
                s = set().union(*(nbrs[v] for v in cls))
                if nb:
                    s -= set(probe)
                nxt.append(frozenset(s))
            out.append(nxt)
        return out

    succ: dict[frozenset, list[list[frozenset]]] = {}
    todo = [start]
    while todo:
        t = todo.pop()
        if t in succ:
            continue
        succ[t] = moves(t)
        todo.extend(s for opts in succ[t] for s in opts if s not in succ)

    winning: set[frozenset] = set()
    while True:
        new = {t for t, opts in succ.items() if t not in winning
               and any(all(s in winning for s in o) for o in opts)}
        if not new:
            break
        winning |= new
    return start in winning
