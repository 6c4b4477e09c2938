"""Pure-Python probe kernel (fallback when the compiled extension is absent)."""

from __future__ import annotations

UNREACH = 255


class ProbeKernel:
    """Partitions territories by probe sets and expands the resulting classes.

    ``dist`` is an n x n list of small ints (``UNREACH`` across components),
    ``closed`` holds the closed-neighbourhood mask of each vertex and
    ``probes`` is the list of probe tuples, in lexicographic order.
    """

    backend = "python"

    def __init__(self, n, dist, closed, probes, no_backtrack=False):
        self.n = n
        self.probes = [tuple(p) for p in probes]
        self.no_backtrack = bool(no_backtrack)
        layers = []
        for u in range(n):
            by_d: dict[int, int] = {}
            for v in range(n):
                by_d[dist[u][v]] = by_d.get(dist[u][v], 0) | 1 << v
            layers.append([by_d[d] for d in sorted(by_d)])
        self._layers = layers
        nchunks = (n + 7) // 8
        tables = []
        for c in range(nchunks):
            tab = [0] * 256
            for b in range(1, 256):
                low = b & -b
                v = 8 * c + low.bit_length() - 1
                tab[b] = tab[b ^ low] | (closed[v] if v < n else 0)
            tables.append(tab)
        self._tables = tables
        self._probe_masks = [sum(1 << u for u in p) for p in self.probes]

    def expand(self, mask: int) -> int:
        out = 0
        c = 0
        while mask:
            out |= self._tables[c][mask & 255]
            mask >>= 8
            c += 1
        return out

    def classes(self, T: int, pi: int) -> list[int]:
        """Classes of T under probe ``pi``, ordered by distance vector."""
        classes = [T]
        layers = self._layers
        for u in self.probes[pi]:
            nxt = []
            for C in classes:
                if C & (C - 1) == 0:
                    nxt.append(C)
                    continue
                for L in layers[u]:
                    x = C & L
                    if x:
                        nxt.append(x)
                        C ^= x
                        if not C:
                            break
            classes = nxt
        return classes

    def successors(self, T: int) -> list[tuple[int, tuple[int, ...]]]:
        """Distinct successor sets of T over all non-useless probes.

        Each entry is ``(probe_index, sorted successor masks)``; only the first
        probe producing a given successor set is kept.  A probe is useless when
        one of its successors contains T.
        """
        out = []
        seen = set()
        expand = self.expand
        nb = self.no_backtrack
        for pi in range(len(self.probes)):
            succ = set()
            useless = False
            pm = self._probe_masks[pi]
            for C in self.classes(T, pi):
                if C & (C - 1) == 0:
                    continue
                S = expand(C)
                if nb:
                    S &= ~pm
                if S & T == T:
                    useless = True
                    break
                succ.add(S)
            if useless:
                continue
            key = tuple(sorted(succ))
            if key not in seen:
                seen.add(key)
                out.append((pi, key))
        return out
