"""Kernel dispatch: compiled extension when importable, pure Python otherwise.

Set ``GSCONNECT_PURE_PYTHON=1`` to force the fallback. Inputs wider than 64
bits always go to the Python implementation.
"""

from __future__ import annotations

import os

from . import _pykernels

_ck = None
if not os.environ.get("GSCONNECT_PURE_PYTHON"):
    try:
        from . import _ckernels as _ck  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _ck = None

BACKEND = "cython" if _ck is not None else "python"
_WORD = 64


def local_complement_bits(adj: list[int], v: int) -> list[int]:
    if _ck is not None and len(adj) <= _WORD:
        return _ck.local_complement_bits(adj, v)
    return _pykernels.local_complement_bits(adj, v)


def gf2_rref(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    if _ck is not None and ncols <= _WORD:
        return _ck.gf2_rref(list(rows))
    return _pykernels.gf2_rref(rows)


def gf2_nullspace(rows: list[int], ncols: int) -> list[int]:
    if _ck is not None and ncols <= _WORD:
        return _ck.gf2_nullspace(list(rows), ncols)
    return _pykernels.gf2_nullspace(rows, ncols)


def search_symplectic(basis: list[int], n: int) -> int:
    if _ck is not None and 4 * n <= _WORD and len(basis) < 48:
        return _ck.search_symplectic(list(basis), n)
    return _pykernels.search_symplectic(basis, n)


def relabel_rows(adj: list[int], order: list[int]) -> tuple[int, ...]:
    if _ck is not None and len(adj) <= _WORD:
        return _ck.relabel_rows(adj, order)
    return _pykernels.relabel_rows(adj, order)


def canonical_rows_bruteforce(adj: list[int]) -> tuple[int, ...]:
    if _ck is not None and len(adj) <= _WORD:
        return _ck.canonical_rows_bruteforce(adj)
    return _pykernels.canonical_rows_bruteforce(adj)
