"""Least-fixpoint solver for the localization game.

States are robber territories at the cops' turn, already expanded by the
robber's move.  From a state ``T`` the cops pick a probe set; every class of
the induced partition is either a singleton (capture) or leads to the state
``expand(C)``.  The cop-win set is the least fixpoint of

    T in W  iff  some probe sends every non-singleton class into W,

computed by counter propagation over lazily discovered reachable states.
Infinite play is a robber win.

Two pruning rules rely on monotonicity (a subset of a cop-win territory is
cop-win, with capture time no larger):

* a probe with a successor containing ``T`` can never be part of a proof for
  ``T`` and is skipped;
* a newly reached territory contained in a known cop-win territory is
  decided without being expanded.
"""

from __future__ import annotations

import time
from array import array
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..graph import UNREACHABLE, Graph, all_pairs_distances
from ._backend import kernel_class
from .game import GameError, Variant, probe_sets

DEFAULT_MAX_EDGES = 40_000_000


class BudgetExceeded(RuntimeError):
    """Wall-clock budget ran out before the instance was decided."""


class BoundExceeded(RuntimeError):
    """No k <= k_max cops win."""

    def __init__(self, k_max: int, verdicts=()):
        super().__init__(f"no winning cop count up to k_max={k_max}")
        self.k_max = k_max
        self.verdicts = list(verdicts)


@dataclass
class GameVerdict:
    cop_win: bool
    k: int
    variant: Variant
    visited_states: int
    evidence: object = None
    wall_time: float = 0.0
    backend: str = ""

    def to_dict(self) -> dict:
        ev = self.evidence
        return {
            "cop_win": self.cop_win,
            "k": self.k,
            "variant": self.variant.value,
            "visited_states": self.visited_states,
            "evidence": None if ev is None else ev.kind,
            "capture_depth": getattr(ev, "depth", None) if self.cop_win else None,
            "backend": self.backend,
            "wall_time": round(self.wall_time, 6),
        }


class Arena:
    """Reachable territory graph for one (graph, k, variant) instance.

    Per explored state the probe entries are kept in flat arrays: the probe
    index of each entry, offsets into the successor list, and successor
    state ids.  ``max_edges`` caps the total number of successor links.
    """

    CHUNK = 64

    def __init__(self, g: Graph, k: int, variant: Variant | str = Variant.STANDARD, *,
                 backend: str | None = None, threads: int = 1, deadline: float | None = None,
                 max_edges: int = DEFAULT_MAX_EDGES):
        if k < 1:
            raise GameError("k must be >= 1")
        if not g.is_connected():
            raise GameError("cop_win requires a connected graph; use localization_number")
        if g.n > 62:
            raise GameError("graphs with n > 62 are not supported")
        self.g = g
        self.k = k
        self.variant = Variant.parse(variant)
        self.dm = all_pairs_distances(g)
        dist = [[255 if d == UNREACHABLE else int(d) for d in row] for row in self.dm.dist]
        closed = [g.adj[v] | 1 << v for v in range(g.n)]
        self.probes = probe_sets(g.n, k)
        cls = kernel_class(backend)
        self.kernel = cls(g.n, dist, closed, self.probes, self.variant is Variant.NO_BACKTRACK)
        self.backend = self.kernel.backend
        self.threads = max(1, int(threads))
        self.deadline = deadline
        self.max_edges = max_edges
        self.edges = 0
        self.root = g.full_mask
        self.masks: list[int] = []
        self.index: dict[int, int] = {}
        self.eprobe: list[array | None] = []
        self.eoff: list[array | None] = []
        self.esucc: list[array | None] = []
        self._add(self.root)

    def _add(self, mask: int) -> int:
        i = self.index.get(mask)
        if i is None:
            i = self.index[mask] = len(self.masks)
            self.masks.append(mask)
            self.eprobe.append(None)
            self.eoff.append(None)
            self.esucc.append(None)
        return i

    def _check_deadline(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"time budget exhausted after {len(self.masks)} states")

    def _expanded(self, ids: Sequence[int]):
        """Yield ``(state id, kernel entries)`` for ``ids`` in order, chunk by chunk."""
        pool = ThreadPoolExecutor(self.threads) if self.threads > 1 else None
        try:
            for lo in range(0, len(ids), self.CHUNK):
                self._check_deadline()
                chunk = ids[lo:lo + self.CHUNK]
                work = [self.masks[i] for i in chunk]
                if pool is not None:
                    results = pool.map(self.kernel.successors, work)
                else:
                    results = map(self.kernel.successors, work)
                yield from zip(chunk, results)
        finally:
            if pool is not None:
                pool.shutdown()

    def _register(self, s: int, ents, new: list[int]):
        probe_ids = array("i")
        offsets = array("i", [0])
        succ_ids = array("i")
        index = self.index
        for pi, succ in ents:
            probe_ids.append(pi)
            for S in succ:
                j = index.get(S)
                if j is None:
                    j = self._add(S)
                    new.append(j)
                succ_ids.append(j)
            offsets.append(len(succ_ids))
        self.edges += len(succ_ids)
        if self.edges > self.max_edges:
            raise BudgetExceeded(f"state-space limit of {self.max_edges} successor links exceeded")
        self.eprobe[s], self.eoff[s], self.esucc[s] = probe_ids, offsets, succ_ids

    def entries(self, s: int) -> list[tuple[int, list[int]]]:
        off, succ = self.eoff[s], self.esucc[s]
        return [(pi, succ[off[e]:off[e + 1]].tolist()) for e, pi in enumerate(self.eprobe[s])]

    # ------------------------------------------------------------ verdict

    def search(self, seeds: Iterable[int] = (), prune: bool = True) -> bool:
        """Decide whether the full territory is cop-win.

        ``seeds`` are territories already known to be cop-win (for instance
        from a run with fewer cops); they only feed the dominance cache.
        """
        stride = max(1, len(self.probes))
        won = self.won = bytearray(len(self.masks))
        deps: list[array] = [array("q") for _ in self.masks]
        counters: list[array | None] = [None] * len(self.masks)
        winners: list[int] = []

        def dominated(m: int) -> bool:
            for w in winners:
                if m & ~w == 0:
                    return True
            return False

        def record_winner(m: int):
            if dominated(m):
                return
            winners[:] = [w for w in winners if w & ~m]
            winners.append(m)

        for m in seeds:
            record_winner(m)

        def win(s: int):
            stack = [s]
            while stack:
                x = stack.pop()
                if won[x]:
                    continue
                won[x] = 1
                if prune:
                    record_winner(self.masks[x])
                for code in deps[x]:
                    owner, e = divmod(code, stride)
                    cnt = counters[owner]
                    cnt[e] -= 1
                    if cnt[e] == 0 and not won[owner]:
                        stack.append(owner)
                deps[x] = array("q")

        level = [0]
        while level:
            todo = []
            for s in level:
                if won[s]:
                    continue
                if prune and dominated(self.masks[s]):
                    win(s)
                else:
                    todo.append(s)
            nxt: list[int] = []
            for s, ents in self._expanded(todo):
                self._register(s, ents, nxt)
                grow = len(self.masks) - len(won)
                if grow:
                    won.extend(bytes(grow))
                    deps.extend(array("q") for _ in range(grow))
                    counters.extend([None] * grow)
                off, succ = self.eoff[s], self.esucc[s]
                cnts = array("i")
                zero = False
                base = s * stride
                for e in range(len(off) - 1):
                    c = 0
                    for j in succ[off[e]:off[e + 1]]:
                        if not won[j]:
                            c += 1
                            deps[j].append(base + e)
                    cnts.append(c)
                    if c == 0:
                        zero = True
                counters[s] = cnts
                # the verdict search only needs counters; drop the entry arrays
                self.eprobe[s] = self.eoff[s] = self.esucc[s] = None
                if zero:
                    win(s)
                    if prune and won[0]:
                        break
            if prune and won[0]:
                break
            level = nxt
        return bool(won[0])

    def robber_states(self) -> list[int]:
        """Explored territories outside the cop-win set (after a full search)."""
        return [m for i, m in enumerate(self.masks) if not self.won[i]]

    def winning_states(self) -> list[int]:
        return [m for i, m in enumerate(self.masks) if self.won[i]]

    # ------------------------------------------------------------ exact ranks

    def explore_full(self):
        level = [0]
        while level:
            ids = [i for i in level if self.eoff[i] is None]
            nxt: list[int] = []
            for s, ents in self._expanded(ids):
                self._register(s, ents, nxt)
            level = nxt

    def compute_ranks(self) -> list[int]:
        """Capture time (in rounds) of every explored state; 0 for robber wins.

        Requires ``explore_full``.  Layer r+1 collects the states owning a
        probe whose successors all have rank <= r.
        """
        n = len(self.masks)
        stride = max(1, len(self.probes))
        rank = [0] * n
        deps = [array("q") for _ in range(n)]
        counters = []
        current = []
        for s in range(n):
            off, succ = self.eoff[s], self.esucc[s]
            if off is None:
                raise GameError("compute_ranks requires a fully explored arena")
            cnts = array("i", (off[e + 1] - off[e] for e in range(len(off) - 1)))
            base = s * stride
            for e in range(len(off) - 1):
                for j in succ[off[e]:off[e + 1]]:
                    deps[j].append(base + e)
            counters.append(cnts)
            if 0 in cnts:
                current.append(s)
        r = 1
        for s in current:
            rank[s] = 1
        while current:
            nxt = []
            for s in current:
                for code in deps[s]:
                    owner, e = divmod(code, stride)
                    counters[owner][e] -= 1
                    if counters[owner][e] == 0 and rank[owner] == 0:
                        rank[owner] = r + 1
                        nxt.append(owner)
            current = nxt
            r += 1
        self.rank = rank
        return rank

    def best_probe(self, s: int) -> int:
        """Lexicographically smallest probe index achieving the state's rank."""
        r = self.rank[s]
        if r == 0:
            raise GameError("state is not cop-win")
        for pi, succ in self.entries(s):
            ranks = [self.rank[j] for j in succ]
            if all(ranks) and max(ranks, default=0) == r - 1:
                return pi
        raise AssertionError("rank without a witnessing probe")


def _deadline(budget: float | None) -> float | None:
    return None if budget is None else time.monotonic() + budget


def cop_win(g: Graph, k: int, variant: Variant | str = Variant.STANDARD, *,
            evidence: bool = True, threads: int = 1, budget: float | None = None,
            backend: str | None = None, seeds: Iterable[int] = ()) -> GameVerdict:
    """Decide whether k cops locate the robber on connected ``g``.

    With ``evidence`` the verdict carries a depth-minimal strategy (cop win)
    or the robber's safe-state certificate (robber win).
    """
    from .evidence import build_certificate, build_strategy

    start = time.monotonic()
    deadline = _deadline(budget)
    arena = Arena(g, k, variant, backend=backend, threads=threads, deadline=deadline)
    won = arena.search(seeds=seeds)
    ev = None
    if evidence:
        if won:
            exact = Arena(g, k, variant, backend=backend, threads=threads, deadline=deadline)
            ev = build_strategy(exact)
        else:
            ev = build_certificate(arena)
    verdict = GameVerdict(won, k, arena.variant, len(arena.masks), ev,
                          time.monotonic() - start, arena.backend)
    verdict.winning_states = arena.winning_states()
    return verdict


@dataclass
class LocalizationResult:
    zeta: int
    verdicts: list[GameVerdict] = field(default_factory=list)
    components: list[int] = field(default_factory=list)


def solve_localization(g: Graph, variant: Variant | str = Variant.STANDARD,
                       k_max: int | None = None, *, evidence: bool = False,
                       threads: int = 1, budget: float | None = None,
                       backend: str | None = None) -> LocalizationResult:
    """Localization number with the per-k verdicts that establish it.

    A disconnected graph takes the maximum over its components.  ``k_max``
    defaults to max(1, n - 1).
    """
    if g.n == 0:
        raise GameError("empty graph")
    if k_max is None:
        k_max = max(1, g.n - 1)
    if k_max < 1:
        raise GameError("k_max must be >= 1")
    comps = g.components()
    if len(comps) > 1:
        deadline = _deadline(budget)
        zetas, verdicts = [], []
        for comp in comps:
            sub = g.induced_subgraph([v for v in range(g.n) if comp >> v & 1])
            remaining = None if deadline is None else max(0.0, deadline - time.monotonic())
            res = solve_localization(sub, variant, k_max, evidence=evidence, threads=threads,
                                     budget=remaining, backend=backend)
            zetas.append(res.zeta)
            verdicts.extend(res.verdicts)
        return LocalizationResult(max(zetas), verdicts, zetas)

    deadline = _deadline(budget)
    verdicts = []
    seeds: list[int] = []
    for k in range(1, k_max + 1):
        remaining = None if deadline is None else max(0.0, deadline - time.monotonic())
        v = cop_win(g, k, variant, evidence=evidence, threads=threads, budget=remaining,
                    backend=backend, seeds=seeds)
        verdicts.append(v)
        if v.cop_win:
            return LocalizationResult(k, verdicts, [k])
        # cop-win territories for k cops stay cop-win for k+1
        seeds = v.winning_states
    raise BoundExceeded(k_max, verdicts)


def localization_number(g: Graph, variant: Variant | str = Variant.STANDARD,
                        k_max: int | None = None, **kwargs) -> int:
    return solve_localization(g, variant, k_max, **kwargs).zeta

