"""Canonical forms and local-complementation equivalence.

Two notions of equivalence live here:

* :func:`are_lc_equivalent` (default) walks the LC orbit of the first graph
  up to isomorphism, deduplicating by canonical form. This is the
  "same network shape" question.
* ``are_lc_equivalent(..., up_to_isomorphism=False)`` asks whether the two
  labeled graph states are related by local Clifford unitaries on the same
  qubits, via the binary linear system for a local symplectic map between
  the two stabilizer groups. This is the exact check the stabilizer oracle
  needs.
"""

from __future__ import annotations

from collections import deque

from . import kernels
from .errors import OrbitBoundExceeded, SizeMismatch
from .graph import Graph, connected_components

__all__ = [
    "MAX_LC_VERTICES",
    "canonical_form",
    "canonical_form_bruteforce",
    "are_isomorphic",
    "lc_orbit",
    "are_lc_equivalent",
    "lc_equivalence_witness",
]

MAX_LC_VERTICES = 12


def _refine(adj: list[int], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition.

    Each cell is split by the number of neighbors a vertex has in every
    cell; sub-cells are ordered by that count vector, which keeps the
    procedure invariant under relabeling.
    """
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        out: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                sig = tuple((adj[v] & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
                out.extend(groups[s] for s in sorted(groups))
            else:
                out.append(cell)
        cells = out
        if not changed:
            return cells


def _twin(adj: list[int], v: int, w: int) -> bool:
    return (adj[v] & ~(1 << w)) == (adj[w] & ~(1 << v))


def _canonical_rows(adj: list[int]) -> tuple[tuple[int, ...], list[int]]:
    """Smallest certificate over the leaves of the refinement search tree.

    Vertices in the branching cell that are twins of an already explored
    vertex are skipped: swapping two twins is an automorphism fixing every
    individualized vertex, so their subtrees yield the same certificates.
    """
    n = len(adj)
    if n == 0:
        return (), []
    best: list = [None, None]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(adj, cells)
        target = None
        for idx, cell in enumerate(cells):
            if len(cell) > 1 and (target is None or len(cell) < len(cells[target])):
                target = idx
        if target is None:
            order = [c[0] for c in cells]
            cert = kernels.relabel_rows(adj, order)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, order
            return
        cell = cells[target]
        reps: list[int] = []
        for v in cell:
            if any(_twin(adj, v, r) for r in reps):
                continue
            reps.append(v)
            rest = [w for w in cell if w != v]
            search(cells[:target] + [[v], rest] + cells[target + 1 :])

    search([list(range(n))])
    return best[0], best[1]


def canonical_form(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Certificate equal for two graphs iff they are isomorphic (labels ignored)."""
    cert, _ = _canonical_rows(g.adjacency_bits())
    return len(g), cert


def canonical_labeling(g: Graph) -> dict[int, int]:
    """Map each vertex id to its position in the canonical order."""
    order_ids = g.sorted_vertices()
    _, order = _canonical_rows(g.adjacency_bits(order_ids))
    return {order_ids[v]: i for i, v in enumerate(order)}


def canonical_form_bruteforce(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Minimum relabeled adjacency over all n! vertex orders (small graphs only)."""
    return len(g), kernels.canonical_rows_bruteforce(g.adjacency_bits())


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    if len(g1) != len(g2) or g1.num_edges != g2.num_edges:
        return False
    return canonical_form(g1) == canonical_form(g2)


def _component_profile(g: Graph) -> list[int]:
    return sorted(len(c) for c in connected_components(g))


def lc_orbit(g: Graph, max_orbit: int = 100_000) -> dict[tuple, Graph]:
    """All LC-orbit members of ``g`` up to isomorphism, keyed by canonical form."""
    start = Graph(g.vertices, g.edges())
    seen = {canonical_form(start): start}
    queue = deque([start])
    while queue:
        h = queue.popleft()
        order = h.sorted_vertices()
        adj = h.adjacency_bits(order)
        for i in range(len(order)):
            if adj[i] & (adj[i] - 1) == 0:  # fewer than two neighbors: no-op
                continue
            nxt = Graph.from_adjacency_bits(kernels.local_complement_bits(adj, i), order)
            key = canonical_form(nxt)
            if key not in seen:
                if len(seen) >= max_orbit:
                    raise OrbitBoundExceeded(f"LC orbit exceeds {max_orbit} classes")
                seen[key] = nxt
                queue.append(nxt)
    return seen


def are_lc_equivalent(
    g1: Graph,
    g2: Graph,
    max_orbit: int = 100_000,
    *,
    up_to_isomorphism: bool = True,
) -> bool:
    """Decide whether ``g2`` can be reached from ``g1`` by local complementations.

    With ``up_to_isomorphism=True`` the orbit of ``g1`` is searched modulo
    graph isomorphism; ``max_orbit`` bounds the number of explored classes
    and exceeding it raises :class:`OrbitBoundExceeded` rather than
    answering. With ``up_to_isomorphism=False`` the vertex sets must be
    identical and the answer is exact labeled LC equivalence.
    """
    if len(g1) != len(g2):
        raise SizeMismatch(f"graphs have {len(g1)} and {len(g2)} vertices")
    if not up_to_isomorphism:
        return lc_equivalence_witness(g1, g2) is not None
    if len(g1) > MAX_LC_VERTICES:
        raise OrbitBoundExceeded(f"orbit search is limited to {MAX_LC_VERTICES} vertices")
    if _component_profile(g1) != _component_profile(g2):
        return False
    target = canonical_form(g2)
    start = Graph(g1.vertices, g1.edges())
    key = canonical_form(start)
    if key == target:
        return True
    seen = {key}
    queue = deque([start])
    while queue:
        h = queue.popleft()
        order = h.sorted_vertices()
        adj = h.adjacency_bits(order)
        for i in range(len(order)):
            if adj[i] & (adj[i] - 1) == 0:
                continue
            nxt = Graph.from_adjacency_bits(kernels.local_complement_bits(adj, i), order)
            key = canonical_form(nxt)
            if key == target:
                return True
            if key not in seen:
                if len(seen) >= max_orbit:
                    raise OrbitBoundExceeded(f"LC orbit exceeds {max_orbit} classes")
                seen.add(key)
                queue.append(nxt)
    return False


def _component_witness(rows1: list[int], rows2: list[int]) -> int:
    """Solve ``T2 B T1 + T2 A + D T1 + C = 0`` for diagonal A, B, C, D.

    ``rows1``/``rows2`` are the adjacency matrices of two graphs on the same
    ``n`` vertices. A solution with ``a_i d_i + b_i c_i = 1`` on every vertex
    is a local symplectic map taking the stabilizer group of the first graph
    state onto that of the second. Returns the packed solution or -1.
    """
    n = len(rows1)
    eqs = []
    for j in range(n):
        for k in range(n):
            e = 0
            for l in range(n):
                if rows2[j] >> l & 1 and rows1[l] >> k & 1:
                    e ^= 1 << (n + l)
            if rows2[j] >> k & 1:
                e ^= 1 << k
            if rows1[j] >> k & 1:
                e ^= 1 << (3 * n + j)
            if j == k:
                e ^= 1 << (2 * n + j)
            if e:
                eqs.append(e)
    basis = kernels.gf2_nullspace(eqs, 4 * n)
    return kernels.search_symplectic(basis, n)


def lc_equivalence_witness(g1: Graph, g2: Graph) -> dict[int, tuple[int, int, int, int]] | None:
    """Per-vertex binary symplectic matrices ``(a, b, c, d)`` relating two graph states.

    Returns ``None`` when the labeled graph states are not LC-equivalent.
    Components are solved independently; local operations cannot merge or
    split them, so differing component vertex sets answer ``None`` at once.
    """
    if g1.vertices != g2.vertices:
        raise SizeMismatch("labeled LC equivalence needs identical vertex sets")
    comps = connected_components(g1)
    if set(comps) != set(connected_components(g2)):
        return None
    out: dict[int, tuple[int, int, int, int]] = {}
    for comp in comps:
        order = sorted(comp)
        if len(order) == 1:
            out[order[0]] = (1, 0, 0, 1)
            continue
        r1 = g1.adjacency_bits(order)
        r2 = g2.adjacency_bits(order)
        if r1 == r2:
            out.update((v, (1, 0, 0, 1)) for v in order)
            continue
        sol = _component_witness(r1, r2)
        if sol < 0:
            return None
        n = len(order)
        for i, v in enumerate(order):
            out[v] = tuple(sol >> (q * n + i) & 1 for q in range(4))  # type: ignore[assignment]
    return out
