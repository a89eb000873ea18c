"""Constructors for the canonical network topologies.

Numbering convention: switches first (ids ``0..m-1`` in path order), then
client leaves grouped by switch in ascending switch order. Switches are
labeled ``Sw{i}`` and the ``j``-th client of switch ``i`` is ``K{j}_{i}``
(``j`` counted from 1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .graph import Graph

__all__ = [
    "MultiStarSpec",
    "build_star",
    "build_multi_star",
    "build_complete",
    "build_complete_bipartite",
    "build_path",
    "build_bi_star",
    "build_tri_star",
    "switch_index",
    "client_owner",
]

_SW = re.compile(r"^Sw(\d+)$")
_K = re.compile(r"^K(\d+)_(\d+)$")


@dataclass(frozen=True)
class MultiStarSpec:
    """Leaf counts ``n_0..n_{m-1}``, one per switch on the path."""

    leaf_counts: tuple[int, ...]

    def __init__(self, leaf_counts: Sequence[int]) -> None:
        counts = tuple(int(n) for n in leaf_counts)
        if not counts:
            raise ValueError("a multi-star needs at least one switch")
        if any(n < 0 for n in counts):
            raise ValueError("leaf counts must be non-negative")
        object.__setattr__(self, "leaf_counts", counts)

    @classmethod
    def homogeneous(cls, m: int, n: int) -> MultiStarSpec:
        return cls([n] * m)

    @property
    def m(self) -> int:
        return len(self.leaf_counts)

    @property
    def total_vertices(self) -> int:
        return self.m + sum(self.leaf_counts)

    @property
    def is_homogeneous(self) -> bool:
        return len(set(self.leaf_counts)) == 1

    def switch_id(self, i: int) -> int:
        return i

    def leaf_ids(self, i: int) -> list[int]:
        start = self.m + sum(self.leaf_counts[:i])
        return list(range(start, start + self.leaf_counts[i]))


def _as_spec(spec: MultiStarSpec | Sequence[int]) -> MultiStarSpec:
    return spec if isinstance(spec, MultiStarSpec) else MultiStarSpec(spec)


def build_star(n: int) -> Graph:
    """Star ``S_n``: center 0 and leaves ``1..n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return Graph(range(n + 1), [(0, j) for j in range(1, n + 1)])


def build_multi_star(spec: MultiStarSpec | Sequence[int]) -> Graph:
    spec = _as_spec(spec)
    m = spec.m
    edges = [(i, i + 1) for i in range(m - 1)]
    labels = {i: f"Sw{i}" for i in range(m)}
    for i in range(m):
        for j, leaf in enumerate(spec.leaf_ids(i), start=1):
            edges.append((i, leaf))
            labels[leaf] = f"K{j}_{i}"
    return Graph(range(spec.total_vertices), edges, labels)


def build_complete(n: int) -> Graph:
    return Graph(range(n), combinations(range(n), 2))


def build_complete_bipartite(n1: int, n2: int) -> Graph:
    """``K_{n1,n2}`` with sides ``0..n1-1`` and ``n1..n1+n2-1``."""
    return Graph(range(n1 + n2), [(i, n1 + j) for i in range(n1) for j in range(n2)])


def build_path(m: int) -> Graph:
    """Path on ``m`` vertices."""
    return Graph(range(m), [(i, i + 1) for i in range(m - 1)])


def build_bi_star(n1: int, n2: int) -> Graph:
    """Two stars with adjacent centers 0 and 1."""
    return build_multi_star([n1, n2])


def build_tri_star(n1: int, n2: int, n3: int) -> Graph:
    """Three stars whose centers 0-1-2 form a path."""
    return build_multi_star([n1, n2, n3])


def switch_index(label: str | None) -> int | None:
    """``"Sw3"`` -> 3; anything else -> None."""
    if label is None:
        return None
    mt = _SW.match(label)
    return int(mt.group(1)) if mt else None


def client_owner(label: str | None) -> int | None:
    """Switch index owning a client label ``"K{j}_{i}"``, else None."""
    if label is None:
        return None
    mt = _K.match(label)
    return int(mt.group(2)) if mt else None
