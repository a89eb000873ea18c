"""Pure-Python implementations of the hot kernels.

Every function here has a twin of the same signature in ``_ckernels.pyx``.
Bit vectors are plain Python ints; bit ``j`` of an adjacency row marks an
edge to vertex ``j``.
"""

from __future__ import annotations

from itertools import permutations


def local_complement_bits(adj: list[int], v: int) -> list[int]:
    nv = adj[v]
    out = list(adj)
    rest = nv
    while rest:
        low = rest & -rest
        u = low.bit_length() - 1
        out[u] = adj[u] ^ (nv & ~low)
        rest ^= low
    return out


def gf2_rref(rows: list[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form over GF(2).

    Pivots are lowest set bits. Returns the nonzero rows and their pivot bit
    positions, in pivot order.
    """
    basis: list[int] = []
    pivots: list[int] = []
    for r in rows:
        for b, p in zip(basis, pivots):
            if r >> p & 1:
                r ^= b
        if not r:
            continue
        p = (r & -r).bit_length() - 1
        for i in range(len(basis)):
            if basis[i] >> p & 1:
                basis[i] ^= r
        basis.append(r)
        pivots.append(p)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]


def gf2_nullspace(rows: list[int], ncols: int) -> list[int]:
    """Basis of ``{x : popcount(r & x) even for every r}``."""
    red, pivots = gf2_rref(rows)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = 1 << f
        for r, p in zip(red, pivots):
            if r >> f & 1:
                x |= 1 << p
        basis.append(x)
    return basis


def search_symplectic(basis: list[int], n: int) -> int:
    """First vector in span(basis) whose per-qubit 2x2 blocks are invertible.

    Vectors are laid out as ``a | b << n | c << 2n | d << 3n``; qubit ``i`` is
    valid when ``a_i d_i + b_i c_i = 1``. Returns -1 when no such vector exists.
    Enumerates the span in Gray-code order.
    """
    full = (1 << n) - 1
    mask = full
    x = 0
    k = len(basis)
    for step in range(1 << k):
        if step:
            x ^= basis[((step & -step).bit_length() - 1)]
        a = x & mask
        b = (x >> n) & mask
        c = (x >> (2 * n)) & mask
        d = (x >> (3 * n)) & mask
        if (a & d) ^ (b & c) == full:
            return x
    return -1


def relabel_rows(adj: list[int], order: list[int]) -> tuple[int, ...]:
    """Adjacency rows after renaming ``order[i]`` to ``i``."""
    pos = [0] * len(adj)
    for i, v in enumerate(order):
        pos[v] = i
    out = []
    for v in order:
        r = adj[v]
        nr = 0
        while r:
            low = r & -r
            nr |= 1 << pos[low.bit_length() - 1]
            r ^= low
        out.append(nr)
    return tuple(out)


def canonical_rows_bruteforce(adj: list[int]) -> tuple[int, ...]:
    """Lexicographically smallest relabeled adjacency over all n! orderings."""
    n = len(adj)
    best: tuple[int, ...] | None = None
    for order in permutations(range(n)):
        cand = relabel_rows(adj, list(order))
        if best is None or cand < best:
            best = cand
    return best if best is not None else ()
