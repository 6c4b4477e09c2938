"""Territories, probes and distance vectors of the localization game.

A territory is a plain ``int`` bitmask over vertex indices.  Probe sets are
sorted tuples of distinct vertices; distance vectors are tuples whose entries
are ints or ``UNREACHABLE``.
"""

from __future__ import annotations

import enum
import itertools
from typing import Iterable

from ..graph import UNREACHABLE, DistanceMatrix, Graph, bits, mask_of


class Variant(str, enum.Enum):
    STANDARD = "standard"
    NO_BACKTRACK = "no_backtrack"

    @classmethod
    def parse(cls, value: "Variant | str") -> "Variant":
        if isinstance(value, Variant):
            return value
        return cls(str(value).replace("-", "_"))


class GameError(ValueError):
    pass


def territory(vertices: Iterable[int]) -> int:
    return mask_of(vertices)


def members(t: int) -> list[int]:
    return list(bits(t))


def probe_width(n: int, k: int) -> int:
    return min(k, n)


def probe_sets(n: int, k: int) -> list[tuple[int, ...]]:
    """All canonical probe sets for k cops, in lexicographic order."""
    return list(itertools.combinations(range(n), probe_width(n, k)))


def check_probe(n: int, k: int, probe) -> tuple[int, ...]:
    p = tuple(probe)
    if len(p) != probe_width(n, k) or list(p) != sorted(set(p)) or any(not 0 <= u < n for u in p):
        raise GameError(f"invalid probe set {p!r} for n={n}, k={k}")
    return p


def distance_vector(dm: DistanceMatrix, probe: tuple[int, ...], v: int) -> tuple:
    return tuple(dm.dist[u][v] for u in probe)


def format_vector(vec: tuple) -> str:
    return ",".join("inf" if d == UNREACHABLE else str(int(d)) for d in vec)


def parse_vector(text: str) -> tuple:
    return tuple(UNREACHABLE if x == "inf" else int(x) for x in text.split(",")) if text else ()


def partition_by_probe(g: Graph, dm: DistanceMatrix, t: int, probe) -> list[tuple[tuple, int]]:
    """Split territory ``t`` into classes of equal distance vector to ``probe``.

    Returns ``(vector, class_mask)`` pairs sorted by vector, with unreachable
    entries ordered after every finite distance.
    """
    if not t:
        raise GameError("territory must be nonempty")
    probe = tuple(probe)
    classes: dict[tuple, int] = {}
    for v in bits(t):
        vec = distance_vector(dm, probe, v)
        classes[vec] = classes.get(vec, 0) | 1 << v
    return sorted(classes.items())


def expand(g: Graph, t: int, variant: Variant | str = Variant.STANDARD, last_probe=()) -> int:
    """Territory after the robber moves: N[t], minus the last probes under no-backtrack."""
    if not t:
        raise GameError("territory must be nonempty")
    out = g.closed_neighborhood(t)
    if Variant.parse(variant) is Variant.NO_BACKTRACK:
        out &= ~mask_of(last_probe)
        if not out:
            raise GameError("no-backtrack expansion is empty")
    return out
