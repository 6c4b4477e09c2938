"""Graph representation, distances, generators, graph6 and small-graph corpora.

Vertices are dense integers ``0..n-1`` and adjacency is stored as one
Python ``int`` bitmask per vertex, so territories and neighbourhoods are
plain integers throughout the package.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

UNREACHABLE = math.inf

MAX_GRAPH6_N = 62
MAX_TREE_N = 12


class GraphError(ValueError):
    """Raised for invalid graph input or parameters."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour index >= n")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at ({v}, {u})")
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("labels length does not match n")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(labels) if labels is not None else None)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def closed_neighborhood(self, mask: int) -> int:
        out = mask
        for v in bits(mask):
            out |= self.adj[v]
        return out

    def components(self) -> list[int]:
        """Connected components as bitmasks, ordered by smallest vertex."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u in vertices for v in bits(self.adj[u])
                 if v in index and index[u] < index[v]]
        labels = None
        if self.labels is not None:
            labels = [self.labels[v] for v in vertices]
        return Graph.from_edges(len(vertices), edges, labels)

    def relabeled(self, labels: Sequence[str] | None) -> "Graph":
        return Graph(self.n, self.adj, tuple(labels) if labels is not None else None)


# ---------------------------------------------------------------- distances


@dataclass(frozen=True)
class DistanceMatrix:
    dist: tuple[tuple[float, ...], ...]

    @property
    def n(self) -> int:
        return len(self.dist)

    def __getitem__(self, uv: tuple[int, int]):
        u, v = uv
        return self.dist[u][v]

    def row(self, u: int) -> tuple[float, ...]:
        return self.dist[u]

    def eccentricity(self, u: int) -> float:
        return max(self.dist[u]) if self.dist else 0


def bfs_distances(g: Graph, source: int) -> list[float]:
    dist: list[float] = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in bits(g.adj[v]):
            if dist[w] is UNREACHABLE:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    return DistanceMatrix(tuple(tuple(bfs_distances(g, s)) for s in range(g.n)))


# ------------------------------------------------------------------- graph6


def encode_graph6(g: Graph) -> str:
    if g.n > MAX_GRAPH6_N:
        raise GraphError(f"graph6 encoding supports n <= {MAX_GRAPH6_N}, got {g.n}")
    out = [chr(63 + g.n)]
    acc = nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = acc << 1 | (g.adj[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise GraphError(f"graph6 character {ch!r} out of range 63..126")
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] < 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] < 63:
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        body = vals[4:]
        if n < 63:
            raise GraphError("graph6 long header used for n < 63")
    else:
        raise GraphError("malformed graph6 length header")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} chars, expected {(nbits + 5) // 6}")
    adj = [0] * n
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if body[pos // 6] >> (5 - pos % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            pos += 1
    if nbits % 6 and body[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise GraphError("graph6 padding bits are nonzero")
    return Graph(n, tuple(adj))


# --------------------------------------------------------------- generators

FAMILIES = ("path", "cycle", "star", "complete", "complete_bipartite", "hypercube", "kneser")


def path_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("path requires n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle requires n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    """K_{1,n}: centre 0, leaves 1..n."""
    if n < 1:
        raise GraphError("star requires n >= 1")
    return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete requires n >= 1")
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError("complete_bipartite requires both sides >= 1")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def hypercube_graph(d: int) -> Graph:
    """Q_d; vertex i is the bit string given by the binary expansion of i."""
    if d < 1:
        raise GraphError("hypercube requires dimension >= 1")
    if d > 5:
        raise GraphError("hypercube dimension > 5 exceeds the 62-vertex limit")
    n = 1 << d
    edges = [(i, i ^ (1 << b)) for i in range(n) for b in range(d) if i < i ^ (1 << b)]
    labels = [format(i, f"0{d}b") for i in range(n)]
    return Graph.from_edges(n, edges, labels)


def colex_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    return sorted(itertools.combinations(range(n), k), key=lambda s: s[::-1])


def kneser_graph(k: int, n: int) -> Graph:
    """K(k, n): k-subsets of {0..n-1} in colex order, adjacent when disjoint."""
    if not n > k >= 1:
        raise GraphError("kneser requires n > k >= 1")
    verts = colex_subsets(n, k)
    if len(verts) > MAX_GRAPH6_N:
        raise GraphError(f"kneser({k},{n}) has {len(verts)} vertices, more than {MAX_GRAPH6_N}")
    edges = [(i, j) for i, j in itertools.combinations(range(len(verts)), 2)
             if not set(verts[i]) & set(verts[j])]
    labels = ["{" + ",".join(str(x + 1) for x in s) + "}" for s in verts]
    return Graph.from_edges(len(verts), edges, labels)


def generate(family: str, params: Sequence[int]) -> Graph:
    builders = {
        "path": (path_graph, 1),
        "cycle": (cycle_graph, 1),
        "star": (star_graph, 1),
        "complete": (complete_graph, 1),
        "complete_bipartite": (complete_bipartite_graph, 2),
        "hypercube": (hypercube_graph, 1),
        "kneser": (kneser_graph, 2),
    }
    if family not in builders:
        raise GraphError(f"unknown family {family!r}")
    fn, arity = builders[family]
    if len(params) != arity:
        raise GraphError(f"{family} takes {arity} parameter(s), got {len(params)}")
    return fn(*params)


# -------------------------------------------------------------------- stats


@dataclass(frozen=True)
class GraphStats:
    n: int
    edge_count: int
    max_degree: int
    component_count: int
    is_bipartite: bool
    girth: float
    diameter: float

    def to_dict(self) -> dict:
        def fin(x):
            return None if x == math.inf else int(x)
        return {
            "n": self.n,
            "edges": self.edge_count,
            "max_degree": self.max_degree,
            "components": self.component_count,
            "bipartite": self.is_bipartite,
            "girth": fin(self.girth),
            "diameter": fin(self.diameter),
        }


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in bits(g.adj[v]):
                if color[w] < 0:
                    color[w] = color[v] ^ 1
                    queue.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def girth(g: Graph) -> float:
    best = math.inf
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in bits(g.adj[v]):
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def graph_stats(g: Graph) -> GraphStats:
    dm = all_pairs_distances(g)
    diameter = max((max(r) for r in dm.dist), default=0)
    return GraphStats(
        n=g.n,
        edge_count=g.edge_count,
        max_degree=max((row.bit_count() for row in g.adj), default=0),
        component_count=len(g.components()),
        is_bipartite=is_bipartite(g),
        girth=girth(g),
        diameter=diameter,
    )


# ------------------------------------------------------------------ corpora


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """Every connected labelled graph on n vertices, by edge-mask order."""
    if not 1 <= n <= 6:
        raise GraphError("enumerate_connected_graphs supports 1 <= n <= 6")
    pairs = list(itertools.combinations(range(n), 2))
    for m in range(1 << len(pairs)):
        adj = [0] * n
        for b, (u, v) in enumerate(pairs):
            if m >> b & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        g = Graph(n, tuple(adj))
        if g.is_connected():
            yield g


def random_connected_graph(n: int, rng, p: float = 0.4) -> Graph:
    """Rejection-sample a connected G(n, p) graph with the given ``random.Random``."""
    while True:
        edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
        g = Graph.from_edges(n, edges)
        if g.is_connected():
            return g


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.edge_count == g.n - 1 and g.is_connected()


def _centroids(g: Graph) -> list[int]:
    n = g.n
    order, parent = [0], [-1] * n
    seen = 1
    for v in order:
        for w in bits(g.adj[v]):
            if not seen >> w & 1:
                seen |= 1 << w
                parent[w] = v
                order.append(w)
    size = [1] * n
    for v in reversed(order[1:]):
        size[parent[v]] += size[v]
    best, cents = n, []
    for v in range(n):
        heaviest = n - size[v]
        for w in bits(g.adj[v]):
            if w != parent[v]:
                heaviest = max(heaviest, size[w])
        if heaviest < best:
            best, cents = heaviest, [v]
        elif heaviest == best:
            cents.append(v)
    return cents


def _ahu(g: Graph, root: int, parent: int = -1) -> str:
    kids = sorted(_ahu(g, w, root) for w in bits(g.adj[root]) if w != parent)
    return "(" + "".join(kids) + ")"


def tree_canonical_form(g: Graph) -> str:
    """AHU encoding rooted at the centroid (lexicographic min over two centroids)."""
    if not is_tree(g):
        raise GraphError("canonical form requires a tree")
    return min(_ahu(g, c) for c in _centroids(g))


def enumerate_trees(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of free trees on n vertices.

    Trees on n vertices are grown by attaching a leaf to every vertex of every
    class representative on n-1 vertices, deduplicated by canonical form.
    """
    if not 1 <= n <= MAX_TREE_N:
        raise GraphError(f"enumerate_trees supports 1 <= n <= {MAX_TREE_N}")
    level = {tree_canonical_form(Graph(1, (0,))): Graph(1, (0,))}
    for m in range(2, n + 1):
        nxt: dict[str, Graph] = {}
        for t in level.values():
            for v in range(t.n):
                child = Graph.from_edges(m, t.edges() + [(v, m - 1)])
                nxt.setdefault(tree_canonical_form(child), child)
        level = nxt
    for key in sorted(level):
        yield level[key]


def prufer_decode(seq: Sequence[int], n: int) -> Graph:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    edges.append((u, v))
    return Graph.from_edges(n, edges)


def contains_subtree(host: Graph, pattern: Graph) -> bool:
    """True iff tree ``pattern`` embeds as a subgraph of tree ``host``."""
    if not is_tree(host) or not is_tree(pattern):
        raise GraphError("contains_subtree requires two trees")
    if pattern.n > host.n:
        return False
    memo: dict[tuple[int, int, int, int], bool] = {}

    def embeds(p: int, pp: int, h: int, hp: int) -> bool:
        key = (p, pp, h, hp)
        if key in memo:
            return memo[key]
        pk = [c for c in bits(pattern.adj[p]) if c != pp]
        hk = [c for c in bits(host.adj[h]) if c != hp]
        ok = False
        if len(pk) <= len(hk):
            fits = [[j for j, hc in enumerate(hk) if embeds(pc, p, hc, h)] for pc in pk]
            ok = _has_matching(fits, len(hk))
        memo[key] = ok
        return ok

    return any(embeds(0, -1, h, -1) for h in range(host.n))


def _has_matching(options: list[list[int]], right: int) -> bool:
    match = [-1] * right

    def augment(i: int, seen: set[int]) -> bool:
        for j in options[i]:
            if j in seen:
                continue
            seen.add(j)
            if match[j] < 0 or augment(match[j], seen):
                match[j] = i
                return True
        return False

    return all(augment(i, set()) for i in range(len(options)))
