"""Pauli measurement rules on graphs, protocols, and cost accounting."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple

from .errors import GraphStateError, InvalidSpecialNeighbor, ProtocolStepError
from .graph import Graph, delete_vertex, local_complement

__all__ = [
    "PauliBasis",
    "MeasurementStep",
    "Protocol",
    "CostReport",
    "ProtocolRun",
    "measure_z",
    "measure_y",
    "measure_x",
    "measure",
    "apply_protocol",
]


class PauliBasis(str, Enum):
    X = "X"
    Y = "Y"
    Z = "Z"


@dataclass(frozen=True)
class MeasurementStep:
    basis: PauliBasis
    target: int
    k0: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "basis", PauliBasis(self.basis))
        if self.k0 is not None and self.basis is not PauliBasis.X:
            raise InvalidSpecialNeighbor(f"k0 is only meaningful for X measurements, got {self.basis.value}")

    def to_dict(self) -> dict:
        d: dict = {"basis": self.basis.value, "target": self.target}
        if self.k0 is not None:
            d["k0"] = self.k0
        return d

    def __str__(self) -> str:
        if self.k0 is None:
            return f"{self.basis.value}({self.target})"
        return f"{self.basis.value}({self.target},{self.k0})"


@dataclass(frozen=True)
class Protocol:
    steps: tuple[MeasurementStep, ...] = ()

    def __init__(self, steps: Iterable[MeasurementStep] = ()) -> None:
        object.__setattr__(self, "steps", tuple(steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __add__(self, other: Protocol) -> Protocol:
        return Protocol(self.steps + tuple(other.steps))

    def to_dict(self) -> dict:
        return {"steps": [s.to_dict() for s in self.steps]}

    def __str__(self) -> str:
        return " -> ".join(str(s) for s in self.steps)


@dataclass(frozen=True)
class CostReport:
    counts: dict = field(default_factory=dict)
    initial_vertices: int = 0
    final_vertices: int = 0

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> dict:
        return {
            "counts": {b.value: self.counts.get(b, 0) for b in PauliBasis},
            "total": self.total,
            "initial_vertices": self.initial_vertices,
            "final_vertices": self.final_vertices,
        }


class ProtocolRun(NamedTuple):
    graph: Graph
    cost: CostReport
    trace: list[Graph]


def measure_z(g: Graph, i: int) -> Graph:
    """Z measurement: delete ``i``."""
    return delete_vertex(g, i)


def measure_y(g: Graph, i: int) -> Graph:
    """Y measurement: local complementation at ``i``, then delete ``i``."""
    return delete_vertex(local_complement(g, i), i)


def measure_x(g: Graph, i: int, k0: int | None = None) -> Graph:
    """X measurement with special neighbor ``k0``.

    Applies LC at ``k0``, LC at ``i``, deletes ``i`` and applies LC at
    ``k0`` again. On an isolated vertex the qubit is in a product state and
    the rule reduces to deletion; ``k0`` must then be omitted.
    """
    nb = g.neighbors(i)
    if not nb:
        if k0 is not None:
            raise InvalidSpecialNeighbor(f"vertex {i} is isolated; k0 must be omitted")
        return delete_vertex(g, i)
    if k0 is None or k0 not in nb:
        raise InvalidSpecialNeighbor(f"k0={k0} is not a neighbor of {i}")
    h = local_complement(g, k0)
    h = delete_vertex(local_complement(h, i), i)
    return local_complement(h, k0)


def measure(g: Graph, basis: PauliBasis | str, i: int, k0: int | None = None) -> Graph:
    basis = PauliBasis(basis)
    if basis is PauliBasis.Z:
        if k0 is not None:
            raise InvalidSpecialNeighbor("k0 is only meaningful for X measurements")
        return measure_z(g, i)
    if basis is PauliBasis.Y:
        if k0 is not None:
            raise InvalidSpecialNeighbor("k0 is only meaningful for X measurements")
        return measure_y(g, i)
    return measure_x(g, i, k0)


def apply_protocol(g: Graph, p: Protocol | Iterable[MeasurementStep], keep_trace: bool = False) -> ProtocolRun:
    """Apply the steps in order, failing on the first invalid one.

    Errors are re-raised as :class:`ProtocolStepError` carrying the step
    index. ``keep_trace`` stores the graph after every step.
    """
    counts: Counter = Counter()
    trace: list[Graph] = []
    cur = g
    for idx, step in enumerate(p):
        try:
            cur = measure(cur, step.basis, step.target, step.k0)
        except GraphStateError as exc:
            raise ProtocolStepError(idx, exc) from exc
        counts[step.basis] += 1
        if keep_trace:
            trace.append(cur)
    cost = CostReport(dict(counts), len(g), len(cur))
    return ProtocolRun(cur, cost, trace)
