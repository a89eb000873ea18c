from __future__ import annotations

import random

import pytest

from gsconnect import _pykernels as py
from gsconnect import kernels

ck = pytest.importorskip("gsconnect._ckernels", reason="compiled extension not built")


def rand_adj(rnd: random.Random, n: int) -> list[int]:
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rnd.random() < 0.5:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("seed", range(20))
def test_local_complement_parity(seed):
    rnd = random.Random(seed)
    n = rnd.randint(1, 64)
    adj = rand_adj(rnd, n)
    v = rnd.randrange(n)
    assert ck.local_complement_bits(adj, v) == py.local_complement_bits(adj, v)


@pytest.mark.parametrize("seed", range(20))
def test_rref_and_nullspace_parity(seed):
    rnd = random.Random(100 + seed)
    ncols = rnd.randint(1, 64)
    rows = [rnd.getrandbits(ncols) for _ in range(rnd.randint(0, 70))]
    assert ck.gf2_rref(rows) == py.gf2_rref(rows)
    null = py.gf2_nullspace(rows, ncols)
    assert ck.gf2_nullspace(rows, ncols) == null
    for x in null:
        assert all(bin(r & x).count("1") % 2 == 0 for r in rows)
    red, _ = py.gf2_rref(rows)
    assert len(red) + len(null) == ncols


@pytest.mark.parametrize("seed", range(20))
def test_search_symplectic_parity(seed):
    rnd = random.Random(200 + seed)
    n = rnd.randint(1, 16)
    basis = [rnd.getrandbits(4 * n) for _ in range(rnd.randint(0, 12))]
    assert ck.search_symplectic(basis, n) == py.search_symplectic(basis, n)


def test_search_symplectic_identity():
    n = 3
    ident = ((1 << n) - 1) | (((1 << n) - 1) << 3 * n)
    assert py.search_symplectic([ident], n) == ident
    assert py.search_symplectic([], n) == -1


@pytest.mark.parametrize("seed", range(10))
def test_relabel_and_bruteforce_parity(seed):
    rnd = random.Random(300 + seed)
    n = rnd.randint(1, 7)
    adj = rand_adj(rnd, n)
    order = list(range(n))
    rnd.shuffle(order)
    assert ck.relabel_rows(adj, order) == py.relabel_rows(adj, order)
    assert ck.canonical_rows_bruteforce(adj) == py.canonical_rows_bruteforce(adj)


def test_wide_input_falls_back():
    # 70 vertices exceed one machine word; dispatch must still work
    rnd = random.Random(7)
    adj = rand_adj(rnd, 70)
    assert kernels.local_complement_bits(adj, 3) == py.local_complement_bits(adj, 3)
