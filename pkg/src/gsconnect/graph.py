"""Immutable simple graphs and the elementary graph-state transformations.

Vertices are non-negative integers that stay fixed for the lifetime of a
graph: deleting a vertex never renumbers the survivors, so protocol steps
can keep addressing switches and clients by identity.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Mapping

from .errors import InvalidGraph, VertexNotFound

__all__ = [
    "Graph",
    "TopologyKind",
    "TopologyClass",
    "neighborhood",
    "complement",
    "local_complement",
    "delete_vertex",
    "compute_bicoloring",
    "classify_topology",
    "connected_components",
    "is_tree",
    "is_star",
    "is_bicolorable",
    "all_graphs",
]


class Graph:
    """Undirected simple graph with stable vertex ids and optional labels.

    Instances are immutable; every transformation returns a new graph.

    Parameters
    ----------
    vertices : iterable of int
        Vertex ids (non-negative).
    edges : iterable of pairs
        Unordered vertex pairs. Self-loops and dangling endpoints are rejected.
    labels : mapping, optional
        Role tags such as ``"Sw0"`` or ``"K1_0"``. Labels of vertices that are
        not present are dropped.
    """

    __slots__ = ("_adj", "_labels", "_hash")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Iterable[tuple[int, int]] = (),
        labels: Mapping[int, str] | None = None,
    ) -> None:
        adj: dict[int, set[int]] = {}
        for v in vertices:
            v = int(v)
            if v < 0:
                raise InvalidGraph(f"vertex ids must be non-negative, got {v}")
            adj[v] = set()
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise InvalidGraph(f"self-loop at vertex {u}")
            if u not in adj or v not in adj:
                raise InvalidGraph(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            adj[u].add(v)
            adj[v].add(u)
        self._adj: dict[int, frozenset[int]] = {v: frozenset(nb) for v, nb in adj.items()}
        self._labels: dict[int, str] = (
            {int(v): str(lab) for v, lab in labels.items() if int(v) in adj} if labels else {}
        )
        self._hash: int | None = None

    @classmethod
    def _from_adj(cls, adj: dict[int, frozenset[int]], labels: Mapping[int, str]) -> Graph:
        # trusted constructor: adj must already be symmetric and loop-free
        g = cls.__new__(cls)
        g._adj = adj
        g._labels = {v: lab for v, lab in labels.items() if v in adj}
        g._hash = None
        return g

    @classmethod
    def from_adjacency_bits(cls, rows: list[int], vertices: Iterable[int] | None = None) -> Graph:
        """Build a graph from bitmask rows (bit j of ``rows[i]`` marks edge i-j)."""
        ids = list(vertices) if vertices is not None else list(range(len(rows)))
        edges = [
            (ids[i], ids[j]) for i, r in enumerate(rows) for j in range(i + 1, len(rows)) if r >> j & 1
        ]
        return cls(ids, edges)

    # --- inspection -------------------------------------------------------
    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._adj)

    @property
    def labels(self) -> dict[int, str]:
        return dict(self._labels)

    def label(self, v: int) -> str | None:
        return self._labels.get(v)

    def sorted_vertices(self) -> list[int]:
        return sorted(self._adj)

    def edges(self) -> list[tuple[int, int]]:
        """Sorted list of edges as ``(u, v)`` with ``u < v``."""
        return sorted((u, v) for u, nb in self._adj.items() for v in nb if u < v)

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise VertexNotFound(v) from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    @property
    def num_edges(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def adjacency_bits(self, order: list[int] | None = None) -> list[int]:
        """Bitmask adjacency rows with respect to ``order`` (default: sorted ids)."""
        order = self.sorted_vertices() if order is None else order
        pos = {v: i for i, v in enumerate(order)}
        rows = []
        for v in order:
            r = 0
            for u in self._adj[v]:
                r |= 1 << pos[u]
            rows.append(r)
        return rows

    # --- derived graphs ---------------------------------------------------
    def with_labels(self, labels: Mapping[int, str]) -> Graph:
        return Graph._from_adj(self._adj, {**self._labels, **labels})

    def relabel(self, mapping: Mapping[int, int]) -> Graph:
        """Rename vertices through an injective ``mapping`` (missing ids keep their name)."""
        f = {v: mapping.get(v, v) for v in self._adj}
        if len(set(f.values())) != len(f):
            raise InvalidGraph("relabeling is not injective")
        adj = {f[v]: frozenset(f[u] for u in nb) for v, nb in self._adj.items()}
        return Graph._from_adj(adj, {f[v]: lab for v, lab in self._labels.items()})

    def induced_subgraph(self, keep: Iterable[int]) -> Graph:
        keep = set(keep)
        missing = keep - self._adj.keys()
        if missing:
            raise VertexNotFound(min(missing))
        adj = {v: self._adj[v] & keep for v in keep}
        return Graph._from_adj(adj, self._labels)

    # --- equality ---------------------------------------------------------
    def same_structure(self, other: Graph) -> bool:
        """Equality of vertex and edge sets, ignoring labels."""
        return self._adj == other._adj

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj and self._labels == other._labels

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._adj.items()), frozenset(self._labels.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(vertices={self.sorted_vertices()}, edges={self.edges()})"


# --- elementary operations ---------------------------------------------------


def neighborhood(g: Graph, v: int) -> frozenset[int]:
    """Return the open neighborhood of ``v`` (``v`` itself excluded)."""
    return g.neighbors(v)


def complement(g: Graph) -> Graph:
    """Complement over distinct vertex pairs; vertex set and labels unchanged."""
    vs = g.vertices
    adj = {v: vs - g._adj[v] - {v} for v in vs}
    return Graph._from_adj(adj, g._labels)


def local_complement(g: Graph, v: int) -> Graph:
    """Complement the edges inside the neighborhood of ``v``.

    Edges incident to ``v`` and edges leaving ``N(v)`` are untouched, so the
    operation is an involution at a fixed vertex.
    """
    nv = g.neighbors(v)
    if len(nv) < 2:
        return g
    adj = dict(g._adj)
    for u in nv:
        # toggle u's adjacency to the rest of N(v)
        adj[u] = g._adj[u] ^ (nv - {u})
    return Graph._from_adj(adj, g._labels)


def delete_vertex(g: Graph, v: int) -> Graph:
    """Remove ``v`` and its incident edges; other ids are preserved."""
    nv = g.neighbors(v)
    adj = {u: (nb - {v} if u in nv else nb) for u, nb in g._adj.items() if u != v}
    return Graph._from_adj(adj, g._labels)


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Components ordered by their smallest vertex id."""
    seen: set[int] = set()
    comps = []
    for s in g.sorted_vertices():
        if s in seen:
            continue
        comp = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g._adj[u]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def compute_bicoloring(g: Graph) -> dict[int, int] | None:
    """Proper 2-coloring by BFS layering, or ``None`` if an odd cycle exists.

    Deterministic: the smallest id of every component gets color 0.
    """
    color: dict[int, int] = {}
    for s in g.sorted_vertices():
        if s in color:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in sorted(g._adj[u]):
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def is_bicolorable(g: Graph) -> bool:
    return compute_bicoloring(g) is not None


def is_tree(g: Graph) -> bool:
    return len(g) > 0 and g.num_edges == len(g) - 1 and len(connected_components(g)) == 1


def is_star(g: Graph) -> bool:
    """Tree in which one vertex is adjacent to every other vertex.

    Counts the degenerate stars S_0 (single vertex) and S_1 (one edge).
    """
    n = len(g)
    if n == 0 or g.num_edges != n - 1:
        return False
    return any(len(nb) == n - 1 for nb in g._adj.values())


# --- topology classification -------------------------------------------------


class TopologyKind(str, Enum):
    EMPTY = "Empty"
    SINGLE_VERTEX = "SingleVertex"
    COMPLETE = "Complete"
    COMPLETE_BIPARTITE = "CompleteBipartite"
    STAR = "Star"
    BI_STAR = "BiStar"
    TRI_STAR = "TriStar"
    PATH = "Path"
    CATERPILLAR = "Caterpillar"
    OTHER = "Other"


@dataclass(frozen=True)
class TopologyClass:
    """Result of :func:`classify_topology`.

    ``centers`` and ``leaf_counts`` are filled for Star/BiStar/TriStar,
    ``sides`` for CompleteBipartite (ascending), ``order`` is always the
    vertex count.
    """

    kind: TopologyKind
    order: int = 0
    centers: tuple[int, ...] = ()
    leaf_counts: tuple[int, ...] = ()
    sides: tuple[int, ...] = ()
    extra: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def shape(self) -> tuple:
        """Label-free summary, identical for isomorphic graphs."""
        lc = self.leaf_counts
        if self.kind in (TopologyKind.BI_STAR, TopologyKind.TRI_STAR, TopologyKind.CATERPILLAR):
            lc = min(lc, lc[::-1])
        return (self.kind.value, self.order, lc, self.sides)

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind.value, "order": self.order}
        if self.centers:
            d["centers"] = list(self.centers)
        if self.leaf_counts:
            d["leaf_counts"] = list(self.leaf_counts)
        if self.sides:
            d["sides"] = list(self.sides)
        return d

    def __str__(self) -> str:
        if self.kind in (TopologyKind.STAR, TopologyKind.BI_STAR, TopologyKind.TRI_STAR):
            body = ", ".join(f"{c}:{k}" for c, k in zip(self.centers, self.leaf_counts))
            return f"{self.kind.value}({body})"
        if self.kind is TopologyKind.COMPLETE_BIPARTITE:
            return f"CompleteBipartite{self.sides}"
        return f"{self.kind.value}({self.order})"


def _core_path(g: Graph, core: set[int]) -> list[int] | None:
    """Order ``core`` as a path (lower-id end first) if it induces one."""
    if len(core) == 1:
        return list(core)
    deg = {v: len(g._adj[v] & core) for v in core}
    ends = sorted(v for v, d in deg.items() if d == 1)
    if len(ends) != 2 or any(d > 2 for d in deg.values()):
        return None
    path = [ends[0]]
    prev = None
    while len(path) < len(core):
        nxt = [w for w in g._adj[path[-1]] & core if w != prev]
        if len(nxt) != 1:
            return None
        prev = path[-1]
        path.append(nxt[0])
    return path if path[-1] == ends[1] else None


def classify_topology(g: Graph) -> TopologyClass:
    """Classify ``g`` into exactly one :class:`TopologyKind`.

    Kinds are tried in a fixed priority order: Empty, SingleVertex, Complete,
    CompleteBipartite, Star, BiStar, TriStar, Path, Caterpillar, Other.
    A star ``K_{1,n}`` is reported as Star, so CompleteBipartite needs both
    sides of size at least two.
    """
    n = len(g)
    m = g.num_edges
    K = TopologyKind
    if n == 1:
        return TopologyClass(K.SINGLE_VERTEX, 1)
    if m == 0:
        return TopologyClass(K.EMPTY, n)
    if m == n * (n - 1) // 2:
        return TopologyClass(K.COMPLETE, n)
    connected = len(connected_components(g)) == 1
    if not connected:
        return TopologyClass(K.OTHER, n)

    coloring = compute_bicoloring(g)
    if coloring is not None:
        n0 = sum(1 for c in coloring.values() if c == 0)
        n1 = n - n0
        if min(n0, n1) >= 2 and m == n0 * n1:
            return TopologyClass(K.COMPLETE_BIPARTITE, n, sides=(min(n0, n1), max(n0, n1)))

    if m != n - 1:
        return TopologyClass(K.OTHER, n)

    # tree from here on; the core is what remains after stripping leaves
    core = {v for v, nb in g._adj.items() if len(nb) > 1}
    path = _core_path(g, core)
    if path is None:
        return TopologyClass(K.OTHER, n)
    leaves = tuple(sum(1 for w in g._adj[c] if w not in core) for c in path)
    if len(path) == 1:
        return TopologyClass(K.STAR, n, centers=tuple(path), leaf_counts=leaves)
    if len(path) == 2:
        return TopologyClass(K.BI_STAR, n, centers=tuple(path), leaf_counts=leaves)
    if len(path) == 3:
        return TopologyClass(K.TRI_STAR, n, centers=tuple(path), leaf_counts=leaves)
    if all(k == 0 for k in leaves[1:-1]) and leaves[0] == 1 and leaves[-1] == 1:
        return TopologyClass(K.PATH, n)
    return TopologyClass(K.CATERPILLAR, n, centers=tuple(path), leaf_counts=leaves)


def all_graphs(n: int, vertices: list[int] | None = None):
    """Yield every labeled simple graph on ``n`` vertices (2^(n choose 2) of them)."""
    ids = list(range(n)) if vertices is None else vertices
    pairs = list(combinations(ids, 2))
    for mask in range(1 << len(pairs)):
        yield Graph(ids, [p for k, p in enumerate(pairs) if mask >> k & 1])
