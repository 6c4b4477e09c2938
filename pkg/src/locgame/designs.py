"""Finite fields, planes, Steiner triple systems and their graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph

# Monic reduction polynomials, coefficients from the constant term upward.
REDUCTION_POLYS = {
    4: (2, (1, 1, 1)),
    8: (2, (1, 1, 0, 1)),
    9: (3, (2, 1, 1)),
    16: (2, (1, 1, 0, 0, 1)),
    25: (5, (2, 1, 1)),
    27: (3, (1, 2, 0, 1)),
}
PRIMES = (2, 3, 5, 7, 11, 13)
SUPPORTED_ORDERS = tuple(sorted(PRIMES + tuple(REDUCTION_POLYS)))


class DesignError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteField:
    """GF(q). Element ``x`` encodes the polynomial whose base-p digits are x."""

    q: int
    p: int
    reduction_poly: tuple[int, ...] | None
    add_table: tuple[tuple[int, ...], ...] = field(repr=False)
    mul_table: tuple[tuple[int, ...], ...] = field(repr=False)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.add_table[a].index(0)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.mul_table[a].index(1)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        s = 0
        for a, b in zip(u, v):
            s = self.add_table[s][self.mul_table[a][b]]
        return s


def _digits(x: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds: Sequence[int], p: int) -> int:
    return sum(d * p**i for i, d in enumerate(ds))


def make_field(q: int) -> FiniteField:
    if q in PRIMES:
        p, poly, e = q, None, 1
    elif q in REDUCTION_POLYS:
        p, poly = REDUCTION_POLYS[q]
        e = len(poly) - 1
    else:
        raise DesignError(f"unsupported field order {q}; supported: {SUPPORTED_ORDERS}")

    def polymul(a: int, b: int) -> int:
        da, db = _digits(a, p, e), _digits(b, p, e)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        if poly is not None:
            for deg in range(2 * e - 2, e - 1, -1):
                c = prod[deg]
                if c:
                    for i, pc in enumerate(poly):
                        prod[deg - e + i] = (prod[deg - e + i] - c * pc) % p
        return _undigits(prod[:e], p)

    add = tuple(
        tuple(_undigits([(x + y) % p for x, y in zip(_digits(a, p, e), _digits(b, p, e))], p)
              for b in range(q))
        for a in range(q))
    mul = tuple(tuple(polymul(a, b) for b in range(q)) for a in range(q))
    return FiniteField(q, p, poly, add, mul)


# ------------------------------------------------------------------ designs


@dataclass(frozen=True)
class Design:
    points: tuple[str, ...]
    blocks: tuple[tuple[int, ...], ...]
    params: tuple[int, int, int, int, int]
    name: str = ""

    @property
    def v(self) -> int:
        return self.params[0]

    @property
    def b(self) -> int:
        return self.params[1]

    @property
    def r(self) -> int:
        return self.params[2]

    @property
    def k(self) -> int:
        return self.params[3]

    @property
    def lam(self) -> int:
        return self.params[4]

    def without_block(self, j: int) -> "Design":
        blocks = self.blocks[:j] + self.blocks[j + 1:]
        return Design(self.points, blocks, self.params, self.name + f"-minus-{j}")


@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    passed: bool
    counterexample: str | None = None


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[AxiomCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[str]:
        return [c.axiom for c in self.checks if not c.passed]


def validate_design(d: Design) -> ValidationReport:
    v, b, r, k, lam = d.params
    checks = []

    def check(name, bad):
        checks.append(AxiomCheck(name, bad is None, bad))

    check("point count", None if len(d.points) == v else f"|X|={len(d.points)} != v={v}")
    check("block count", None if len(d.blocks) == b else f"|B|={len(d.blocks)} != b={b}")
    bad = next((f"block {j} = {blk}" for j, blk in enumerate(d.blocks)
                if len(set(blk)) != len(blk) or any(not 0 <= x < len(d.points) for x in blk)), None)
    check("blocks are point sets", bad)
    bad = next((f"block {j} has size {len(blk)} != k={k}"
                for j, blk in enumerate(d.blocks) if len(blk) != k), None)
    check("block size", bad)
    reps = [0] * len(d.points)
    for blk in d.blocks:
        for x in blk:
            if 0 <= x < len(reps):
                reps[x] += 1
    bad = next((f"point {x} lies in {c} blocks != r={r}" for x, c in enumerate(reps) if c != r), None)
    check("replication", bad)
    cover: dict[tuple[int, int], int] = {}
    for blk in d.blocks:
        for pair in itertools.combinations(sorted(blk), 2):
            cover[pair] = cover.get(pair, 0) + 1
    bad = next((f"pair {pair} covered {cover.get(pair, 0)} times != lambda={lam}"
                for pair in itertools.combinations(range(len(d.points)), 2)
                if cover.get(pair, 0) != lam), None)
    check("pair coverage", bad)
    return ValidationReport(tuple(checks))


def _homogeneous_points(F: FiniteField) -> list[tuple[int, int, int]]:
    """Normalised triples (leftmost nonzero coordinate = 1) in lexicographic order."""
    return [t for t in itertools.product(range(F.q), repeat=3)
            if any(t) and next(x for x in t if x) == 1]


def _pg_coordinates(q: int) -> tuple[FiniteField, list[tuple[int, int, int]]]:
    F = make_field(q)
    return F, _homogeneous_points(F)


def projective_plane(q: int) -> Design:
    F, pts = _pg_coordinates(q)
    blocks = tuple(tuple(i for i, p in enumerate(pts) if F.dot(p, line) == 0) for line in pts)
    labels = tuple("[{}:{}:{}]".format(*p) for p in pts)
    n = q * q + q + 1
    return Design(labels, blocks, (n, n, q + 1, q + 1, 1), f"PG(2,{q})")


def projective_line_labels(q: int) -> tuple[str, ...]:
    _, pts = _pg_coordinates(q)
    return tuple("<{}:{}:{}>".format(*p) for p in pts)


def affine_plane(q: int) -> Design:
    F = make_field(q)
    idx = lambda x, y: x * q + y  # noqa: E731
    blocks = []
    for m in range(q):
        for c in range(q):
            blocks.append(tuple(sorted(idx(x, F.add(F.mul(m, x), c)) for x in range(q))))
    for c in range(q):
        blocks.append(tuple(idx(c, y) for y in range(q)))
    labels = tuple(f"({x},{y})" for x in range(q) for y in range(q))
    return Design(labels, tuple(blocks), (q * q, q * q + q, q + 1, q, 1), f"AG(2,{q})")


def steiner_triple_system(v: int) -> Design:
    """Bose construction for v = 3 (mod 6), Skolem construction for v = 1 (mod 6)."""
    if v < 7 or v % 6 not in (1, 3):
        raise DesignError(f"STS({v}) requires v >= 7 and v = 1 or 3 (mod 6)")
    triples = []
    if v % 6 == 3:
        m = v // 3  # order of the idempotent commutative quasigroup Z_m, m odd
        half = (m + 1) // 2
        pt = lambda x, i: x + (i % 3) * m  # noqa: E731
        op = lambda x, y: (x + y) * half % m  # noqa: E731
        for x in range(m):
            triples.append((pt(x, 0), pt(x, 1), pt(x, 2)))
        for i in range(3):
            for x, y in itertools.combinations(range(m), 2):
                triples.append((pt(x, i), pt(y, i), pt(op(x, y), i + 1)))
        labels = [f"({x},{i})" for i in range(3) for x in range(m)]
    else:
        n = (v - 1) // 6
        m = 2 * n  # half-idempotent commutative quasigroup on Z_{2n}
        inf = 3 * m
        pt = lambda x, i: x + (i % 3) * m  # noqa: E731

        def op(x, y):
            s = (x + y) % m
            return s // 2 if s % 2 == 0 else (s - 1) // 2 + n

        for x in range(n):
            triples.append((pt(x, 0), pt(x, 1), pt(x, 2)))
        for x in range(n):
            for i in range(3):
                triples.append((inf, pt(x + n, i), pt(x, i + 1)))
        for i in range(3):
            for x, y in itertools.combinations(range(m), 2):
                triples.append((pt(x, i), pt(y, i), pt(op(x, y), i + 1)))
        labels = [f"({x},{i})" for i in range(3) for x in range(m)] + ["inf"]
    blocks = tuple(sorted(tuple(sorted(t)) for t in triples))
    return Design(tuple(labels), blocks, (v, v * (v - 1) // 6, (v - 1) // 2, 3, 1), f"STS({v})")


def incidence_graph(d: Design, block_labels: Sequence[str] | None = None) -> Graph:
    """Bipartite point/block graph: points 0..v-1, then blocks v..v+b-1."""
    nv = len(d.points)
    edges = [(x, nv + j) for j, blk in enumerate(d.blocks) for x in blk]
    if block_labels is None:
        block_labels = [f"B{j}" for j in range(len(d.blocks))]
    return Graph.from_edges(nv + len(d.blocks), edges, list(d.points) + list(block_labels))


@dataclass(frozen=True)
class PolarityMap:
    """Point index -> line index of a projective plane."""

    point_to_line: tuple[int, ...]

    def is_symmetric(self, plane: Design) -> bool:
        on = [set(b) for b in plane.blocks]
        n = len(self.point_to_line)
        return all((v in on[self.point_to_line[u]]) == (u in on[self.point_to_line[v]])
                   for u in range(n) for v in range(n))


def orthogonal_polarity(q: int) -> PolarityMap:
    # Points and lines share the normalised coordinate list, so [a:b:c] -> <a:b:c>
    # is the identity on indices.
    return PolarityMap(tuple(range(q * q + q + 1)))


def polarity_graph(q: int, polarity: PolarityMap | None = None) -> Graph:
    plane = projective_plane(q)
    pi = polarity or orthogonal_polarity(q)
    edges = [(u, v) for v in range(len(plane.points)) for u in plane.blocks[pi.point_to_line[v]]
             if u < v]
    return Graph.from_edges(len(plane.points), edges, plane.points)


def absolute_points(q: int, polarity: PolarityMap | None = None) -> list[int]:
    plane = projective_plane(q)
    pi = polarity or orthogonal_polarity(q)
    return [u for u in range(len(plane.points)) if u in plane.blocks[pi.point_to_line[u]]]


def symmetric_bibd_families(qs: Sequence[int] = (2, 3, 4)) -> list[tuple[Design, int]]:
    """Symmetric BIBDs with lambda = 1 are exactly projective planes; expected zeta = k."""
    return [(projective_plane(q), q + 1) for q in qs]


# ------------------------------------------------------------- text format


def format_design(d: Design) -> str:
    lines = [" ".join(str(x) for x in d.params)]
    lines += [" ".join(str(x) for x in blk) for blk in d.blocks]
    return "\n".join(lines) + "\n"


def parse_design(text: str, labels: Sequence[str] | None = None) -> Design:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows or len(rows[0]) != 5:
        raise DesignError("design header must be 'v b r k lambda'")
    try:
        params = tuple(int(x) for x in rows[0])
        blocks = tuple(tuple(int(x) for x in row) for row in rows[1:])
    except ValueError as exc:
        raise DesignError(f"non-integer entry in design text: {exc}") from None
    v = params[0]
    if any(not 0 <= x < v for blk in blocks for x in blk):
        raise DesignError(f"block entry outside 0..{v - 1}")
    if len(blocks) != params[1]:
        raise DesignError(f"header declares {params[1]} blocks, found {len(blocks)}")
    pts = tuple(labels) if labels is not None else tuple(str(i) for i in range(v))
    return Design(pts, blocks, params)  # type: ignore[arg-type]
