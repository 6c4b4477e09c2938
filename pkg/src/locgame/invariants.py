"""Exact comparison invariants: metric dimension, chromatic number, pathwidth."""

from __future__ import annotations

import itertools

from .graph import Graph, all_pairs_distances, bits


class SizeLimitExceeded(ValueError):
    pass


def _limit(g: Graph, n_max: int, what: str):
    if g.n > n_max:
        raise SizeLimitExceeded(f"{what} is limited to n <= {n_max}, got n={g.n}")


def twin_classes(g: Graph) -> list[list[int]]:
    """Classes of mutual twins (same neighbourhood outside the pair)."""
    seen = [False] * g.n
    out = []
    for u in range(g.n):
        if seen[u]:
            continue
        cls = [u]
        seen[u] = True
        for v in range(u + 1, g.n):
            if not seen[v] and g.adj[u] & ~(1 << v) == g.adj[v] & ~(1 << u):
                cls.append(v)
                seen[v] = True
        out.append(cls)
    return out


def is_resolving(dm_rows, probe, n: int) -> bool:
    return len({tuple(dm_rows[u][v] for u in probe) for v in range(n)}) == n


def metric_dimension(g: Graph, n_max: int = 20) -> int:
    """Size of a smallest resolving set, by increasing-size exhaustive search.

    All but one vertex of every twin class must be in a resolving set, which
    gives the starting size and a cheap rejection test.
    """
    _limit(g, n_max, "metric_dimension")
    if g.n <= 1:
        return 0
    rows = all_pairs_distances(g).dist
    twins = [c for c in twin_classes(g) if len(c) > 1]
    start = sum(len(c) - 1 for c in twins)
    twin_masks = [sum(1 << v for v in c) for c in twins]
    for k in range(max(1, start), g.n):
        for probe in itertools.combinations(range(g.n), k):
            pm = sum(1 << u for u in probe)
            if any((tm & ~pm).bit_count() > 1 for tm in twin_masks):
                continue
            if is_resolving(rows, probe, g.n):
                return k
    return g.n - 1


def brute_force_metric_dimension(g: Graph) -> int:
    """Plain subset enumeration; oracle for ``metric_dimension``."""
    rows = all_pairs_distances(g).dist
    for k in range(g.n + 1):
        for probe in itertools.combinations(range(g.n), k):
            if is_resolving(rows, probe, g.n):
                return k
    raise AssertionError("unreachable")


def is_proper_coloring(g: Graph, colors) -> bool:
    return all(colors[u] != colors[v] for u, v in g.edges())


def find_coloring(g: Graph, k: int) -> list[int] | None:
    """A proper colouring with colours 0..k-1, or None; DSATUR-ordered backtracking."""
    n = g.n
    colors = [-1] * n

    def pick() -> int:
        best, best_key = -1, None
        for v in range(n):
            if colors[v] >= 0:
                continue
            sat = len({colors[w] for w in bits(g.adj[v]) if colors[w] >= 0})
            key = (sat, g.adj[v].bit_count())
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def solve(done: int, used: int) -> bool:
        if done == n:
            return True
        v = pick()
        forbidden = {colors[w] for w in bits(g.adj[v])}
        # colours beyond the first unused one are symmetric
        for c in range(min(k, used + 1)):
            if c in forbidden:
                continue
            colors[v] = c
            if solve(done + 1, max(used, c + 1)):
                return True
        colors[v] = -1
        return False

    return list(colors) if solve(0, 0) else None


def chromatic_number(g: Graph, n_max: int = 18) -> int:
    _limit(g, n_max, "chromatic_number")
    if g.n == 0:
        return 0
    if g.edge_count == 0:
        return 1
    k = 2
    while find_coloring(g, k) is None:
        k += 1
    return k


def vertex_separation(g: Graph, n_max: int = 18) -> int:
    """min over vertex orders of max |{placed vertices with an unplaced neighbour}|."""
    _limit(g, n_max, "pathwidth")
    n = g.n
    if n == 0:
        return 0
    full = (1 << n) - 1
    adj = g.adj
    best = [0] * (1 << n)
    for S in range(1, full + 1):
        rest = full & ~S
        boundary = 0
        m = S
        while m:
            low = m & -m
            if adj[low.bit_length() - 1] & rest:
                boundary += 1
            m ^= low
        inner = n
        m = S
        while m:
            low = m & -m
            val = best[S ^ low]
            if val < inner:
                inner = val
            m ^= low
        best[S] = boundary if boundary > inner else inner
    return best[full]


def pathwidth(g: Graph, n_max: int = 18) -> int:
    """Exact pathwidth, equal to the vertex separation number."""
    return vertex_separation(g, n_max)
