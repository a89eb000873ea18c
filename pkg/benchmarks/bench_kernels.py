"""Compare the compiled kernels with the pure-Python fallback.

Usage::

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one line per kernel with the best-of-``repeat`` time for each backend
and the speedup. Requires the extension to be built.
"""

from __future__ import annotations

import argparse
import random
import timeit

from gsconnect import _pykernels as py

try:
    from gsconnect import _ckernels as ck
except ImportError:  # pragma: no cover
    raise SystemExit("compiled kernels not available; build with `pip install --no-build-isolation -e .`")


def rand_adj(rnd: random.Random, n: int) -> list[int]:
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rnd.random() < 0.5:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def workloads(rnd: random.Random) -> dict:
    adj40 = rand_adj(rnd, 40)
    rows = [rnd.getrandbits(64) for _ in range(200)]
    basis = [rnd.getrandbits(48) for _ in range(14)]
    adj8 = rand_adj(rnd, 8)
    return {
        "local_complement_bits (n=40, all vertices)": lambda k: [k.local_complement_bits(adj40, v) for v in range(40)],
        "gf2_nullspace (200 x 64)": lambda k: k.gf2_nullspace(rows, 64),
        "search_symplectic (n=12, 2^14 span)": lambda k: k.search_symplectic(basis, 12),
        "canonical_rows_bruteforce (n=8)": lambda k: k.canonical_rows_bruteforce(adj8),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rnd = random.Random(args.seed)
    print(f"{'kernel':45s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for name, fn in workloads(rnd).items():
        assert fn(py) == fn(ck), name
        tp = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: fn(ck), number=1, repeat=args.repeat))
        print(f"{name:45s} {tp * 1e3:12.3f} {tc * 1e3:12.3f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
