"""Stabilizer-tableau oracle for the graph-level measurement rules.

A graph state is simulated exactly as a stabilizer group in binary
symplectic form. Pauli measurements are applied with the +1 outcome
post-selected, the resulting state is brought back to graph form with
local Cliffords, and the extracted graph is compared with the rule output
under labeled LC equivalence. None of this shares code with
:mod:`gsconnect.measurement`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .canon import are_lc_equivalent
from .errors import InvalidTableau, VertexNotFound
from .graph import Graph, all_graphs
from .measurement import PauliBasis, measure

__all__ = [
    "StabilizerTableau",
    "tableau_from_graph",
    "apply_lc_unitary",
    "measure_pauli_postselect",
    "graph_from_tableau",
    "check_theorem1",
    "check_lc_unitary",
    "LocalOps",
    "apply_ops",
    "same_group",
    "random_graph",
    "VerifyReport",
    "verify_rules",
]

_PAULI_BITS = {PauliBasis.X: (1, 0), PauliBasis.Y: (1, 1), PauliBasis.Z: (0, 1)}


def _phase_exponent(x1, z1, x2, z2) -> int:
    """Power of i picked up when multiplying Pauli strings ``P1 * P2``.

    Vectorized form of the per-qubit ``g`` function used in tableau
    simulators; ``(1, 1)`` denotes Y.
    """
    x1 = x1.astype(np.int64)
    z1 = z1.astype(np.int64)
    x2 = x2.astype(np.int64)
    z2 = z2.astype(np.int64)
    g = np.where(
        (x1 == 1) & (z1 == 1),
        z2 - x2,
        np.where(x1 == 1, z2 * (2 * x2 - 1), np.where(z1 == 1, x2 * (1 - 2 * z2), 0)),
    )
    return int(g.sum())


@dataclass
class StabilizerTableau:
    """``n`` stabilizer generators on qubits named by ``qubits``.

    Row ``i`` is the Pauli string with X-bits ``x[i]``, Z-bits ``z[i]`` and
    overall sign ``(-1) ** r[i]``.
    """

    x: np.ndarray
    z: np.ndarray
    r: np.ndarray
    qubits: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        self.x = np.asarray(self.x, dtype=np.uint8) % 2
        self.z = np.asarray(self.z, dtype=np.uint8) % 2
        self.r = np.asarray(self.r, dtype=np.uint8) % 2
        if not self.qubits:
            self.qubits = tuple(range(self.x.shape[1] if self.x.ndim == 2 else 0))

    @property
    def n(self) -> int:
        return len(self.qubits)

    def copy(self) -> StabilizerTableau:
        return StabilizerTableau(self.x.copy(), self.z.copy(), self.r.copy(), self.qubits)

    def index(self, vertex: int) -> int:
        try:
            return self.qubits.index(vertex)
        except ValueError:
            raise VertexNotFound(vertex) from None

    # --- row algebra --------------------------------------------------------
    def rowmul(self, h: int, i: int) -> None:
        """Replace row ``h`` by the product ``row_i * row_h`` (rows must commute)."""
        e = 2 * int(self.r[h]) + 2 * int(self.r[i])
        e += _phase_exponent(self.x[i], self.z[i], self.x[h], self.z[h])
        e %= 4
        if e not in (0, 2):
            raise InvalidTableau("product of anticommuting rows")
        self.r[h] = e // 2
        self.x[h] ^= self.x[i]
        self.z[h] ^= self.z[i]

    def symplectic_products(self) -> np.ndarray:
        xi = self.x.astype(np.int64)
        zi = self.z.astype(np.int64)
        return (xi @ zi.T + zi @ xi.T) % 2

    def is_valid(self) -> bool:
        """Rows commute pairwise and are independent over GF(2)."""
        if self.x.shape != (self.n, self.n) or self.z.shape != (self.n, self.n):
            return False
        if self.symplectic_products().any():
            return False
        return _gf2_rank(np.hstack([self.x, self.z])) == self.n

    # --- single-qubit Cliffords (conjugation of every row) -------------------
    def h(self, q: int) -> None:
        self.r ^= self.x[:, q] & self.z[:, q]
        self.x[:, q], self.z[:, q] = self.z[:, q].copy(), self.x[:, q].copy()

    def s(self, q: int) -> None:
        # X -> Y, Y -> -X, Z -> Z
        self.r ^= self.x[:, q] & self.z[:, q]
        self.z[:, q] ^= self.x[:, q]

    def sdg(self, q: int) -> None:
        # X -> -Y, Y -> X, Z -> Z
        self.r ^= self.x[:, q] & (1 - self.z[:, q])
        self.z[:, q] ^= self.x[:, q]

    def sqrt_x(self, q: int) -> None:
        """Conjugate by ``exp(-i pi/4 X)``: X -> X, Z -> -Y, Y -> Z."""
        self.r ^= self.z[:, q] & (1 - self.x[:, q])
        self.x[:, q] ^= self.z[:, q]

    def sqrt_z(self, q: int) -> None:
        """Conjugate by ``exp(+i pi/4 Z)``: X -> -Y, Y -> X, Z -> Z."""
        self.sdg(q)

    def pauli_x(self, q: int) -> None:
        self.r ^= self.z[:, q]

    def pauli_z(self, q: int) -> None:
        self.r ^= self.x[:, q]

    def pauli_y(self, q: int) -> None:
        self.r ^= self.x[:, q] ^ self.z[:, q]

    def apply(self, gate: str, q: int) -> None:
        getattr(self, _GATES[gate])(q)

    def to_strings(self) -> list[str]:
        out = []
        for i in range(self.n):
            s = "-" if self.r[i] else "+"
            s += "".join("IXZY"[int(self.x[i, j]) + 2 * int(self.z[i, j])] for j in range(self.n))
            out.append(s)
        return out


_GATES = {"H": "h", "S": "s", "SDG": "sdg", "X": "pauli_x", "Y": "pauli_y", "Z": "pauli_z",
          "SQRT_X": "sqrt_x", "SQRT_Z": "sqrt_z"}
_INVERSE = {"H": "H", "S": "SDG", "SDG": "S", "X": "X", "Y": "Y", "Z": "Z"}


def _gf2_rank(m: np.ndarray) -> int:
    m = m.copy() % 2
    rank = 0
    rows, cols = m.shape
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if m[i, c]), None)
        if piv is None:
            continue
        m[[rank, piv]] = m[[piv, rank]]
        for i in range(rows):
            if i != rank and m[i, c]:
                m[i] ^= m[rank]
        rank += 1
    return rank


def tableau_from_graph(g: Graph) -> StabilizerTableau:
    """Generators ``X_v prod_{u in N(v)} Z_u`` with positive signs."""
    order = g.sorted_vertices()
    n = len(order)
    pos = {v: i for i, v in enumerate(order)}
    z = np.zeros((n, n), dtype=np.uint8)
    for u, v in g.edges():
        z[pos[u], pos[v]] = z[pos[v], pos[u]] = 1
    return StabilizerTableau(np.eye(n, dtype=np.uint8), z, np.zeros(n, dtype=np.uint8), tuple(order))


def apply_lc_unitary(t: StabilizerTableau, a: int, neighbors) -> StabilizerTableau:
    """Conjugate by ``exp(-i pi/4 X_a) prod_b exp(i pi/4 Z_b)`` over ``b`` in ``neighbors``.

    ``a`` and ``neighbors`` are qubit indices. For the tableau of a graph
    state and the true neighborhood of ``a`` this yields exactly the
    stabilizer group of the locally complemented graph.
    """
    if not 0 <= a < t.n:
        raise IndexError(f"qubit {a} out of range for {t.n} qubits")
    out = t.copy()
    out.sqrt_x(a)
    for b in neighbors:
        if not 0 <= b < t.n:
            raise IndexError(f"qubit {b} out of range for {t.n} qubits")
        out.sqrt_z(b)
    return out


def _solve_membership(t: StabilizerTableau, px: np.ndarray, pz: np.ndarray) -> np.ndarray | None:
    """Coefficients ``c`` with ``sum_i c_i row_i = (px, pz)`` over GF(2), or ``None``."""
    a = np.hstack([t.x, t.z]).T.astype(np.uint8)  # 2n x n
    b = np.concatenate([px, pz]).astype(np.uint8)
    aug = np.hstack([a, b[:, None]]) % 2
    rows, cols = aug.shape
    ncoef = cols - 1
    rank = 0
    pivots = []
    for c in range(ncoef):
        piv = next((i for i in range(rank, rows) if aug[i, c]), None)
        if piv is None:
            continue
        aug[[rank, piv]] = aug[[piv, rank]]
        for i in range(rows):
            if i != rank and aug[i, c]:
                aug[i] ^= aug[rank]
        pivots.append(c)
        rank += 1
    if aug[rank:, -1].any():
        return None
    coef = np.zeros(ncoef, dtype=np.uint8)
    for i, c in enumerate(pivots):
        coef[c] = aug[i, -1]
    return coef


def _group_element_sign(t: StabilizerTableau, coef: np.ndarray) -> int:
    """Sign bit of ``prod_{c_i = 1} row_i``."""
    x = np.zeros(t.n, dtype=np.uint8)
    z = np.zeros(t.n, dtype=np.uint8)
    e = 0
    for i in np.flatnonzero(coef):
        e += 2 * int(t.r[i]) + _phase_exponent(t.x[i], t.z[i], x, z)
        x ^= t.x[i]
        z ^= t.z[i]
    return (e % 4) // 2


def same_group(t1: StabilizerTableau, t2: StabilizerTableau, *, signs: bool = True) -> bool:
    """Equality of the generated stabilizer groups (optionally ignoring signs)."""
    if t1.qubits != t2.qubits:
        return False
    for i in range(t2.n):
        coef = _solve_membership(t1, t2.x[i], t2.z[i])
        if coef is None:
            return False
        if signs and _group_element_sign(t1, coef) != t2.r[i]:
            return False
    return True


def measure_pauli_postselect(t: StabilizerTableau, basis: PauliBasis | str, q: int) -> StabilizerTableau:
    """Measure a single-qubit Pauli on qubit index ``q`` keeping the +1 outcome.

    The measured qubit ends in a product eigenstate and is dropped, so the
    result has ``n - 1`` qubits.
    """
    basis = PauliBasis(basis)
    if not 0 <= q < t.n:
        raise IndexError(f"qubit {q} out of range for {t.n} qubits")
    px, pz = _PAULI_BITS[basis]
    t = t.copy()
    anti = np.flatnonzero((t.x[:, q] * pz + t.z[:, q] * px) % 2)
    if len(anti):
        p = int(anti[0])
        for i in anti[1:]:
            t.rowmul(int(i), p)
        t.x[p] = 0
        t.z[p] = 0
        t.r[p] = 0
        t.x[p, q] = px
        t.z[p, q] = pz
    else:
        vx = np.zeros(t.n, dtype=np.uint8)
        vz = np.zeros(t.n, dtype=np.uint8)
        vx[q], vz[q] = px, pz
        coef = _solve_membership(t, vx, vz)
        if coef is None:  # cannot happen for a full-rank stabilizer state
            raise InvalidTableau("deterministic Pauli not in the stabilizer group")
        if _group_element_sign(t, coef):
            raise InvalidTableau(f"outcome +1 of {basis.value} on qubit {q} has zero probability")
        # bring the measured Pauli into a single row
        p = int(np.flatnonzero(coef)[0])
        for i in np.flatnonzero(coef)[1:]:
            t.rowmul(p, int(i))
    # clear qubit q from every other row using the pure P_q row
    for i in range(t.n):
        if i != p and (t.x[i, q] or t.z[i, q]):
            t.rowmul(i, p)
    keep_rows = [i for i in range(t.n) if i != p]
    keep_cols = [j for j in range(t.n) if j != q]
    out = StabilizerTableau(
        t.x[np.ix_(keep_rows, keep_cols)],
        t.z[np.ix_(keep_rows, keep_cols)],
        t.r[keep_rows],
        tuple(t.qubits[j] for j in keep_cols),
    )
    return out


@dataclass
class LocalOps:
    """Local Cliffords relating a tableau to its extracted graph state.

    ``to_graph`` lists ``(gate, vertex)`` pairs that, applied in order to the
    original tableau, give exactly ``tableau_from_graph(graph)``.
    :meth:`from_graph` is the reverse sequence.
    """

    to_graph: list[tuple[str, int]]

    def from_graph(self) -> list[tuple[str, int]]:
        return [(_INVERSE[g], v) for g, v in reversed(self.to_graph)]

    def by_vertex(self) -> dict[int, list[str]]:
        out: dict[int, list[str]] = {}
        for g, v in self.from_graph():
            out.setdefault(v, []).append(g)
        return out


def _eliminate_x(t: StabilizerTableau) -> int:
    """Row-reduce the X block in place (Gauss-Jordan); returns its rank."""
    n = t.n
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, n) if t.x[i, c]), None)
        if piv is None:
            continue
        if piv != rank:
            t.x[[rank, piv]] = t.x[[piv, rank]]
            t.z[[rank, piv]] = t.z[[piv, rank]]
            t.r[[rank, piv]] = t.r[[piv, rank]]
        for i in range(n):
            if i != rank and t.x[i, c]:
                t.rowmul(i, rank)
        rank += 1
    return rank


def graph_from_tableau(t: StabilizerTableau) -> tuple[Graph, LocalOps]:
    """Bring a stabilizer state into graph form with local Cliffords.

    Hadamards on the pivot columns of the X-free rows make the X block
    invertible; Gauss-Jordan turns it into the identity, phase gates clear
    Y's on the diagonal and Z flips fix negative signs. The remaining Z
    block is the adjacency matrix.
    """
    if not t.is_valid():
        raise InvalidTableau("generators are dependent or do not commute")
    n = t.n
    w = t.copy()
    ops: list[tuple[str, int]] = []
    rank = _eliminate_x(w)
    if rank < n:
        # rows rank..n-1 are pure-Z; pick independent columns among them
        sub = w.z[rank:].copy()
        cols = []
        r = 0
        for c in range(n):
            piv = next((i for i in range(r, sub.shape[0]) if sub[i, c]), None)
            if piv is None:
                continue
            sub[[r, piv]] = sub[[piv, r]]
            for i in range(sub.shape[0]):
                if i != r and sub[i, c]:
                    sub[i] ^= sub[r]
            cols.append(c)
            r += 1
        for c in cols:
            w.h(c)
            ops.append(("H", w.qubits[c]))
        rank = _eliminate_x(w)
        if rank < n:
            raise InvalidTableau("could not reach graph form")
    # Gauss-Jordan with column pivots in order leaves X = identity
    for i in range(n):
        if w.z[i, i]:
            w.s(i)
            ops.append(("S", w.qubits[i]))
    for i in range(n):
        if w.r[i]:
            w.pauli_z(i)
            ops.append(("Z", w.qubits[i]))
    if not (w.z == w.z.T).all() or w.z.diagonal().any():
        raise InvalidTableau("Z block is not a valid adjacency matrix")
    edges = [(w.qubits[i], w.qubits[j]) for i, j in combinations(range(n), 2) if w.z[i, j]]
    return Graph(w.qubits, edges), LocalOps(ops)


def apply_ops(t: StabilizerTableau, ops: list[tuple[str, int]]) -> StabilizerTableau:
    out = t.copy()
    for gate, v in ops:
        out.apply(gate, out.index(v))
    return out


def check_theorem1(g: Graph, basis: PauliBasis | str, i: int, k0: int | None = None) -> bool:
    """Compare a graph measurement rule with exact stabilizer simulation.

    True iff the post-selected post-measurement state, brought to graph
    form, is LC-equivalent on the same qubits to the rule's output graph.
    """
    basis = PauliBasis(basis)
    expected = measure(g, basis, i, k0)
    t = tableau_from_graph(g)
    after = measure_pauli_postselect(t, basis, t.index(i))
    got, _ = graph_from_tableau(after)
    return are_lc_equivalent(got, expected, up_to_isomorphism=False)


def check_lc_unitary(g: Graph, a: int) -> bool:
    """Exact (signed) group equality between the rotated tableau and ``|tau_a(G)>``."""
    from .graph import local_complement

    t = tableau_from_graph(g)
    rotated = apply_lc_unitary(t, t.index(a), [t.index(b) for b in g.neighbors(a)])
    return same_group(rotated, tableau_from_graph(local_complement(g, a)))


# --- verification sweeps -------------------------------------------------------


def random_graph(n: int, rng: np.random.Generator, p: float = 0.5) -> Graph:
    """Erdos-Renyi graph on vertices ``0..n-1``."""
    mask = rng.random((n, n)) < p
    return Graph(range(n), [(i, j) for i, j in combinations(range(n), 2) if mask[i, j]])


def measurement_cases(g: Graph):
    """Every valid ``(basis, vertex, k0)`` for ``g``."""
    for v in g.sorted_vertices():
        yield PauliBasis.Z, v, None
        yield PauliBasis.Y, v, None
        nb = sorted(g.neighbors(v))
        if not nb:
            yield PauliBasis.X, v, None
        for k0 in nb:
            yield PauliBasis.X, v, k0


def random_case(rng: np.random.Generator, max_vertices: int):
    n = int(rng.integers(1, max_vertices + 1))
    g = random_graph(n, rng)
    v = int(rng.integers(n))
    basis = PauliBasis("XYZ"[int(rng.integers(3))])
    k0 = None
    if basis is PauliBasis.X and g.neighbors(v):
        nb = sorted(g.neighbors(v))
        k0 = nb[int(rng.integers(len(nb)))]
    return g, basis, v, k0


@dataclass
class VerifyReport:
    checked: int = 0
    failed: int = 0
    lc_checked: int = 0
    lc_failed: int = 0
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.lc_failed == 0

    def to_dict(self) -> dict:
        return {
            "measurement_rules": {"checked": self.checked, "failed": self.failed},
            "lc_unitary": {"checked": self.lc_checked, "failed": self.lc_failed},
            "passed": self.ok,
            "counterexample": self.counterexample,
        }


def verify_rules(
    exhaustive_up_to: int = 5,
    trials: int = 500,
    max_vertices: int = 10,
    seed: int = 0,
) -> VerifyReport:
    """Check every measurement rule and the LC unitary against the tableau oracle.

    Exhaustive over all labeled graphs with at most ``exhaustive_up_to``
    vertices, then ``trials`` random cases drawn with an independent child
    seed per trial.
    """
    from .io import graph_to_dict

    rep = VerifyReport()

    def record(g, basis, v, k0, kind):
        if rep.counterexample is None:
            rep.counterexample = {
                "check": kind,
                "graph": graph_to_dict(g),
                "basis": basis,
                "vertex": v,
                "k0": k0,
            }

    def run_case(g, basis, v, k0):
        rep.checked += 1
        if not check_theorem1(g, basis, v, k0):
            rep.failed += 1
            record(g, basis.value, v, k0, "measurement_rule")

    def run_lc(g, v):
        rep.lc_checked += 1
        if not check_lc_unitary(g, v):
            rep.lc_failed += 1
            record(g, None, v, None, "lc_unitary")

    for n in range(1, exhaustive_up_to + 1):
        for g in all_graphs(n):
            for basis, v, k0 in measurement_cases(g):
                run_case(g, basis, v, k0)
            for v in g.sorted_vertices():
                run_lc(g, v)

    children = np.random.SeedSequence(seed).spawn(trials)
    for child in children:
        rng = np.random.default_rng(child)
        g, basis, v, k0 = random_case(rng, max_vertices)
        run_case(g, basis, v, k0)
        run_lc(g, v)
    return rep
