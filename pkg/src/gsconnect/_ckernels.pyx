# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

All bit vectors must fit in 64 bits; ``gsconnect.kernels`` routes larger
inputs to the pure-Python versions.
"""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

cdef inline int _lowbit(u64 x) nogil:
    return __builtin_ctzll(x)


def local_complement_bits(list adj, int v):
    cdef u64 nv = adj[v]
    cdef u64 rest = nv, low
    cdef int u
    out = list(adj)
    while rest:
        low = rest & (~rest + 1)
        u = _lowbit(rest)
        out[u] = <u64>adj[u] ^ (nv & ~low)
        rest ^= low
    return out


cdef int _rref(u64* rows, int nrows, int* pivots) nogil:
    # in-place reduction; returns rank, rows[0:rank] hold the basis
    cdef int rank = 0, i, j, p
    cdef u64 r
    for i in range(nrows):
        r = rows[i]
        for j in range(rank):
            if (r >> pivots[j]) & 1:
                r ^= rows[j]
        if r == 0:
            continue
        p = _lowbit(r)
        for j in range(rank):
            if (rows[j] >> p) & 1:
                rows[j] ^= r
        rows[rank] = r
        pivots[rank] = p
        rank += 1
    return rank


def gf2_rref(list rows):
    cdef int n = len(rows), i, rank
    cdef u64* buf = <u64*>malloc(max(n, 1) * sizeof(u64))
    cdef int* piv = <int*>malloc(max(n, 1) * sizeof(int))
    try:
        for i in range(n):
            buf[i] = rows[i]
        rank = _rref(buf, n, piv)
        order = sorted(range(rank), key=lambda k: piv[k])
        return [buf[k] for k in order], [piv[k] for k in order]
    finally:
        free(buf)
        free(piv)


def gf2_nullspace(list rows, int ncols):
    cdef int n = len(rows), i, j, f, rank
    cdef u64 x
    cdef u64* buf = <u64*>malloc(max(n, 1) * sizeof(u64))
    cdef int* piv = <int*>malloc(max(n, 1) * sizeof(int))
    cdef char ispiv[64]
    try:
        for i in range(n):
            buf[i] = rows[i]
        rank = _rref(buf, n, piv)
        for f in range(ncols):
            ispiv[f] = 0
        for j in range(rank):
            ispiv[piv[j]] = 1
        out = []
        for f in range(ncols):
            if ispiv[f]:
                continue
            x = (<u64>1) << f
            for j in range(rank):
                if (buf[j] >> f) & 1:
                    x |= (<u64>1) << piv[j]
            out.append(x)
        return out
    finally:
        free(buf)
        free(piv)


def search_symplectic(list basis, int n):
    cdef int k = len(basis), i
    cdef u64 full = ((<u64>1) << n) - 1
    cdef u64 x = 0, a, b, c, d
    cdef u64 step, total
    cdef u64* bb = <u64*>malloc(max(k, 1) * sizeof(u64))
    try:
        for i in range(k):
            bb[i] = basis[i]
        total = (<u64>1) << k
        with nogil:
            step = 0
            while step < total:
                if step:
                    x ^= bb[_lowbit(step)]
                a = x & full
                b = (x >> n) & full
                c = (x >> (2 * n)) & full
                d = (x >> (3 * n)) & full
                if ((a & d) ^ (b & c)) == full:
                    break
                step += 1
        if step < total:
            return x
        return -1
    finally:
        free(bb)


cdef void _relabel(u64* adj, int* order, int* pos, int n, u64* out) nogil:
    cdef int i
    cdef u64 r, nr
    for i in range(n):
        pos[order[i]] = i
    for i in range(n):
        r = adj[order[i]]
        nr = 0
        while r:
            nr |= (<u64>1) << pos[_lowbit(r)]
            r &= r - 1
        out[i] = nr


def relabel_rows(list adj, list order):
    cdef int n = len(adj), i
    cdef u64 a[64]
    cdef u64 out[64]
    cdef int o[64]
    cdef int pos[64]
    for i in range(n):
        a[i] = adj[i]
        o[i] = order[i]
    _relabel(a, o, pos, n, out)
    return tuple([out[i] for i in range(n)])


def canonical_rows_bruteforce(list adj):
    # Heap's algorithm over all orderings, keeping the lexicographic minimum
    cdef int n = len(adj), i, j, t
    cdef u64 a[64]
    cdef u64 cur[64]
    cdef u64 best[64]
    cdef int o[64]
    cdef int pos[64]
    cdef int cnt[64]
    cdef bint have = False, smaller
    if n == 0:
        return ()
    for i in range(n):
        a[i] = adj[i]
        o[i] = i
        cnt[i] = 0
    with nogil:
        _relabel(a, o, pos, n, best)
        i = 1
        while i < n:
            if cnt[i] < i:
                j = cnt[i] if i % 2 else 0
                t = o[j]; o[j] = o[i]; o[i] = t
                _relabel(a, o, pos, n, cur)
                smaller = False
                for t in range(n):
                    if cur[t] != best[t]:
                        smaller = cur[t] < best[t]
                        break
                if smaller:
                    for t in range(n):
                        best[t] = cur[t]
                cnt[i] += 1
                i = 1
            else:
                cnt[i] = 0
                i += 1
    return tuple([best[i] for i in range(n)])
