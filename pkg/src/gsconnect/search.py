"""Enumeration of client-removal choices on odd multi-stars.

For ``m`` switches, ``(m - 1)/2`` of the interior switches ``1..m-2`` lose
their clients. Sets related by the reflection ``i -> m - 1 - i`` give
isomorphic outcomes, so only the lexicographically smaller member of each
pair is evaluated.

Gate synthesis for an arbitrary removal set is a heuristic that reproduces
the tabulated ``m = 7`` sequences; outcomes for other ``m`` are exploratory.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import NamedTuple, Sequence

from .builders import MultiStarSpec, build_multi_star
from .canon import canonical_form
from .errors import EvenSwitchCount, SearchBoundExceeded
from .graph import Graph, TopologyClass, classify_topology
from .measurement import MeasurementStep, PauliBasis, Protocol, apply_protocol, measure
from .protocols import client_removal_steps, heavy_centers, max_connect_protocol, mirror_set, mirror_step

__all__ = [
    "MAX_SEARCH_SWITCHES",
    "RemovalConfig",
    "Enumeration",
    "enumerate_configs",
    "synthesize_gates",
    "run_config",
    "classify_all",
    "enumerate_table",
]

MAX_SEARCH_SWITCHES = 13
X, Y = PauliBasis.X, PauliBasis.Y


@dataclass(frozen=True)
class RemovalConfig:
    m: int
    removal_set: tuple[int, ...]

    @property
    def mirror(self) -> tuple[int, ...]:
        return mirror_set(self.removal_set, self.m)

    @property
    def canonical(self) -> bool:
        return self.removal_set <= self.mirror

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.removal_set)) + "}"


class Enumeration(NamedTuple):
    configs: list[RemovalConfig]
    classes: int

    @property
    def canonical(self) -> list[RemovalConfig]:
        return [c for c in self.configs if c.canonical]


def _check_m(m: int) -> None:
    if m % 2 == 0:
        raise EvenSwitchCount(f"expected an odd number of switches, got m={m}")
    if m < 3:
        raise ValueError("removal sets need at least three switches")


def enumerate_configs(m: int) -> Enumeration:
    """All ``C(m-2, (m-1)/2)`` removal sets, flagged canonical or mirror duplicate."""
    _check_m(m)
    configs = [RemovalConfig(m, s) for s in combinations(range(1, m - 1), (m - 1) // 2)]
    assert len(configs) == comb(m - 2, (m - 1) // 2)
    return Enumeration(configs, sum(1 for c in configs if c.canonical))


def _runs(removal: Sequence[int]) -> list[list[int]]:
    runs: list[list[int]] = []
    for i in sorted(removal):
        if runs and runs[-1][-1] == i - 1:
            runs[-1].append(i)
        else:
            runs.append([i])
    return runs


def _plan(m: int, removal: Sequence[int]) -> list[tuple[PauliBasis, int, int | None]]:
    """Planned switch gates ``(basis, target, preferred k0)`` for a canonical set."""
    runs = _runs(removal)
    if all(len(r) == 1 for r in runs):
        return [(s.basis, s.target, s.k0) for s in max_connect_protocol([0] * m, ending=Y)]
    first: list[tuple[PauliBasis, int, int | None]] = []
    second: list[tuple[PauliBasis, int, int | None]] = []
    for run in runs:
        left = run[0] - 1
        rest = list(run)
        if len(rest) % 2 == 0:
            # Y on the first switch joins its neighbors, leaving an odd run
            first.append((Y, rest[0], None))
            rest = rest[1:]
        if len(rest) == 1:
            s = rest[0]
            k0 = s + 1 if s + 1 != m - 1 else s - 1
            if k0 == s - 1 and len(run) > 1:
                k0 = left
            second.append((X, s, k0))
            continue
        for j in range(0, len(rest), 2):
            s = rest[j]
            k0 = left if j == 0 else rest[j - 1]
            (first if j == 0 and len(run) % 2 else second).append((X, s, k0))
    first.sort(key=lambda t: t[1])
    second.sort(key=lambda t: -t[1])
    return first + second


def synthesize_gates(m: int, removal: Sequence[int], g: Graph | None = None) -> list[MeasurementStep]:
    """Switch gates that follow the client removal for ``removal``.

    Non-canonical sets reuse the plan of their mirror image. When a planned
    ``k0`` is no longer adjacent to its target (possible for long runs), the
    adjacent switch closest in index is used instead, preferring the right.
    """
    removal = tuple(sorted(removal))
    mirrored = removal > mirror_set(removal, m)
    plan = _plan(m, mirror_set(removal, m) if mirrored else removal)
    if mirrored:
        plan = [(b, m - 1 - t, None if k is None else m - 1 - k) for b, t, k in plan]
    if g is None:
        spec = MultiStarSpec([1] * m)
        g = apply_protocol(build_multi_star(spec), Protocol(client_removal_steps(spec, removal))).graph
    steps = []
    for basis, target, k0 in plan:
        if basis is X:
            nb = g.neighbors(target)
            if k0 not in nb:
                switches = sorted((abs(w - target), -w) for w in nb if w < m)
                k0 = -switches[0][1] if switches else (min(nb) if nb else None)
        step = MeasurementStep(basis, target, k0)
        g = measure(g, basis, target, k0)
        steps.append(step)
    return steps


class ConfigOutcome(NamedTuple):
    config: RemovalConfig
    protocol: Protocol
    graph: Graph
    topology: TopologyClass
    heavy: tuple[int, ...]

    @property
    def gates(self) -> list[MeasurementStep]:
        return [s for s in self.protocol if s.target < self.config.m]

    def to_dict(self) -> dict:
        return {
            "config": list(self.config.removal_set),
            "mirror": list(self.config.mirror),
            "gates": " -> ".join(str(s) for s in self.gates),
            "topology_class": self.topology.kind.value,
            "topology": str(self.topology),
            "heavy_centers": list(self.heavy),
            "surviving_vertices": len(self.graph),
            "source": "table" if self.config.m == 7 else "heuristic",
        }


def run_config(config: RemovalConfig, spec: MultiStarSpec | Sequence[int]) -> ConfigOutcome:
    spec = spec if isinstance(spec, MultiStarSpec) else MultiStarSpec(spec)
    if spec.m != config.m:
        raise ValueError("spec and config disagree on the number of switches")
    removal = client_removal_steps(spec, config.removal_set)
    g = apply_protocol(build_multi_star(spec), Protocol(removal)).graph
    gates = synthesize_gates(config.m, config.removal_set, g)
    protocol = Protocol(removal + gates)
    final = apply_protocol(build_multi_star(spec), protocol).graph
    topo = classify_topology(final)
    return ConfigOutcome(config, protocol, final, topo, heavy_centers(final, topo))


def _guarded(m: int) -> None:
    _check_m(m)
    if m > MAX_SEARCH_SWITCHES:
        raise SearchBoundExceeded(f"enumeration is limited to m <= {MAX_SEARCH_SWITCHES}, got m={m}")


def enumerate_table(m: int, n: int, include_mirrors: bool = False) -> list[ConfigOutcome]:
    """Outcome of every canonical configuration (and mirrors, if requested)."""
    _guarded(m)
    spec = MultiStarSpec.homogeneous(m, n)
    enum = enumerate_configs(m)
    chosen = enum.configs if include_mirrors else enum.canonical
    return [run_config(c, spec) for c in chosen]


def classify_all(m: int, n: int) -> dict[RemovalConfig, TopologyClass]:
    """Topology reached from each canonical removal set on a homogeneous multi-star."""
    return {o.config: o.topology for o in enumerate_table(m, n)}


def outcome_signature(o: ConfigOutcome) -> tuple[str, int]:
    """(kind, number of centers that accumulated clients)."""
    return o.topology.kind.value, len(o.heavy)


def mirror_isomorphic(o1: ConfigOutcome, o2: ConfigOutcome) -> bool:
    return canonical_form(o1.graph) == canonical_form(o2.graph)


__all__ += ["ConfigOutcome", "outcome_signature", "mirror_isomorphic", "mirror_step"]
