# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled probe kernel: same contract as ``_pykernel.ProbeKernel``."""

from libc.stdint cimport uint64_t, uint8_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int _ctz(unsigned long long x) { return __builtin_ctzll(x); }
    """
    int _ctz(unsigned long long x) nogil

cdef enum:
    MAXN = 64

UNREACH = 255


cdef inline int popcount_le1(uint64_t x) nogil:
    return (x & (x - 1)) == 0


cdef class ProbeKernel:
    cdef int n, k, nprobes, nchunks
    cdef bint no_backtrack
    cdef uint8_t dist[MAXN][MAXN]
    cdef uint64_t tables[8][256]
    cdef int* probe_arr
    cdef uint64_t* probe_masks
    cdef public list probes
    cdef public str backend

    def __cinit__(self):
        self.probe_arr = NULL
        self.probe_masks = NULL

    def __init__(self, int n, dist, closed, probes, no_backtrack=False):
        if n > 62:
            raise ValueError("compiled kernel supports n <= 62")
        cdef int u, v, c, b, low, i, j
        self.backend = "cython"
        self.n = n
        self.no_backtrack = bool(no_backtrack)
        self.probes = [tuple(p) for p in probes]
        self.nprobes = len(self.probes)
        self.k = len(self.probes[0]) if self.nprobes else 0
        for u in range(n):
            for v in range(n):
                self.dist[u][v] = <uint8_t> dist[u][v]
        self.nchunks = (n + 7) // 8
        cdef uint64_t cm
        for c in range(self.nchunks):
            self.tables[c][0] = 0
            for b in range(1, 256):
                low = b & -b
                v = 8 * c + _ctz(low)
                cm = <uint64_t> closed[v] if v < n else 0
                self.tables[c][b] = self.tables[c][b ^ low] | cm
        self.probe_arr = <int*> malloc(max(1, self.nprobes * self.k) * sizeof(int))
        self.probe_masks = <uint64_t*> malloc(max(1, self.nprobes) * sizeof(uint64_t))
        for i in range(self.nprobes):
            self.probe_masks[i] = 0
            for j in range(self.k):
                self.probe_arr[i * self.k + j] = self.probes[i][j]
                self.probe_masks[i] |= (<uint64_t> 1) << self.probes[i][j]

    def __dealloc__(self):
        if self.probe_arr != NULL:
            free(self.probe_arr)
        if self.probe_masks != NULL:
            free(self.probe_masks)

    cdef inline uint64_t _expand(self, uint64_t m) nogil:
        cdef uint64_t out = 0
        cdef int c = 0
        while m:
            out |= self.tables[c][m & 255]
            m >>= 8
            c += 1
        return out

    def expand(self, mask):
        return self._expand(<uint64_t> mask)

    cdef int _classes(self, uint64_t T, int pi, uint64_t* out) nogil:
        # Refine T one probe vertex at a time; buckets are indexed by distance, so
        # classes come out ordered by distance vector.
        cdef uint64_t cur[MAXN]
        cdef uint64_t bucket[256]
        cdef int ncur = 1, nout, i, j, u, d, maxd
        cdef uint64_t C, low
        cur[0] = T
        for j in range(self.k):
            u = self.probe_arr[pi * self.k + j]
            nout = 0
            for i in range(ncur):
                C = cur[i]
                if popcount_le1(C):
                    out[nout] = C
                    nout += 1
                    continue
                maxd = -1
                while C:
                    low = C & (~C + 1)
                    d = self.dist[u][_ctz(low)]
                    if d > maxd:
                        while maxd < d:
                            maxd += 1
                            bucket[maxd] = 0
                    bucket[d] |= low
                    C ^= low
                for d in range(maxd + 1):
                    if bucket[d]:
                        out[nout] = bucket[d]
                        nout += 1
            for i in range(nout):
                cur[i] = out[i]
            ncur = nout
        for i in range(ncur):
            out[i] = cur[i]
        return ncur

    def classes(self, T, int pi):
        cdef uint64_t out[MAXN]
        cdef int m = self._classes(<uint64_t> T, pi, out)
        return [out[i] for i in range(m)]

    cdef int _succ(self, uint64_t T, int pi, uint64_t* succ) nogil:
        """Sorted distinct successors of (T, pi); -1 if the probe is useless."""
        cdef uint64_t cls[MAXN]
        cdef int m = self._classes(T, pi, cls)
        cdef int ns = 0, i, j
        cdef uint64_t S, pm = self.probe_masks[pi]
        for i in range(m):
            if popcount_le1(cls[i]):
                continue
            S = self._expand(cls[i])
            if self.no_backtrack:
                S &= ~pm
            if (S & T) == T:
                return -1
            j = 0
            while j < ns and succ[j] != S:
                j += 1
            if j < ns:
                continue
            j = ns
            while j > 0 and succ[j - 1] > S:
                succ[j] = succ[j - 1]
                j -= 1
            succ[j] = S
            ns += 1
        return ns

    def successors(self, T):
        cdef uint64_t t = <uint64_t> T
        cdef int pi, i, np = self.nprobes, stride = MAXN + 1
        cdef set seen = set()
        cdef list out = []
        cdef tuple key
        cdef uint64_t* buf = <uint64_t*> malloc(max(1, np) * stride * sizeof(uint64_t))
        cdef int* counts = <int*> malloc(max(1, np) * sizeof(int))
        if buf == NULL or counts == NULL:
            free(buf)
            free(counts)
            raise MemoryError()
        try:
            with nogil:
                for pi in range(np):
                    counts[pi] = self._succ(t, pi, buf + pi * stride)
            for pi in range(np):
                if counts[pi] < 0:
                    continue
                key = tuple([buf[pi * stride + i] for i in range(counts[pi])])
                if key not in seen:
                    seen.add(key)
                    out.append((pi, key))
        finally:
            free(buf)
            free(counts)
        return out
