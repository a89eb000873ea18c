"""Measurement protocols on multi-star networks and their closed-form predictions.

All generators address vertices through the numbering of
:func:`gsconnect.builders.build_multi_star`: switch ``i`` has id ``i`` and its
clients follow after the switches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .builders import MultiStarSpec, build_complete, build_multi_star, client_owner, switch_index
from .canon import MAX_LC_VERTICES, are_lc_equivalent
from .errors import (
    EvenSwitchCount,
    InvalidRemovalSet,
    OddSwitchCount,
    ProtocolInvariantViolation,
    TopologyMismatch,
)
from .graph import Graph, TopologyClass, TopologyKind, classify_topology, compute_bicoloring, is_star
from .measurement import CostReport, MeasurementStep, PauliBasis, Protocol, apply_protocol

__all__ = [
    "predicted_alpha",
    "predicted_cost",
    "predicted_alpha_hetero",
    "predicted_cost_hetero",
    "MaxConnectOutcome",
    "max_connect_protocol",
    "generate_max_connect",
    "reduce_even_to_odd",
    "generate_even_max_connect",
    "generate_bi_star_variant",
    "generate_extranet",
    "M7_TABLE",
    "TableRow",
    "RemovalOutcome",
    "table1_protocol",
    "heavy_centers",
    "mirror_set",
]

X, Y, Z = PauliBasis.X, PauliBasis.Y, PauliBasis.Z


def _spec(spec: MultiStarSpec | Sequence[int]) -> MultiStarSpec:
    return spec if isinstance(spec, MultiStarSpec) else MultiStarSpec(spec)


def _require_odd(m: int) -> None:
    if m < 1 or m % 2 == 0:
        raise EvenSwitchCount(f"expected an odd number of switches, got m={m}")


# --- closed forms ------------------------------------------------------------


def predicted_alpha(m: int, n: int) -> int:
    """Size ``(n + 1)(m + 1)/2`` of the complete graph reachable from ``m`` stars of ``n`` leaves."""
    _require_odd(m)
    return (n + 1) * (m + 1) // 2


def predicted_cost(m: int, n: int) -> int:
    """Number of measurements ``(n + 1)(m - 1)/2`` spent reaching it."""
    _require_odd(m)
    return (n + 1) * (m - 1) // 2


def predicted_alpha_hetero(leaf_counts: Sequence[int]) -> int:
    """Survivors when switch ``i`` has ``leaf_counts[i]`` clients.

    The odd-indexed switches lose their clients, so only even-indexed
    switches and their clients remain: ``(m + 1)/2 + sum_{i even} n_i``.
    """
    m = len(leaf_counts)
    _require_odd(m)
    return (m + 1) // 2 + sum(leaf_counts[0::2])


def predicted_cost_hetero(leaf_counts: Sequence[int]) -> int:
    m = len(leaf_counts)
    _require_odd(m)
    return (m - 1) // 2 + sum(leaf_counts[1::2])


# --- maximal connectivity ----------------------------------------------------


@dataclass
class MaxConnectOutcome:
    protocol: Protocol
    final_graph: Graph
    alpha: int
    cost: CostReport
    predicted_alpha: int
    predicted_cost: int
    topology: TopologyClass
    trace: list[Graph] = field(default_factory=list, repr=False)
    lc_complete_checked: bool = False

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "predicted_alpha": self.predicted_alpha,
            "cost": self.cost.total,
            "predicted_cost": self.predicted_cost,
            "cost_by_basis": self.cost.to_dict()["counts"],
            "topology_class": self.topology.to_dict(),
            "lc_equivalent_to_complete": self.lc_complete_checked or None,
            "protocol": self.protocol.to_dict(),
        }


def _sweep_steps(switches: list[int], leaves: dict[int, list[int]], ending: PauliBasis) -> list[MeasurementStep]:
    # odd positions along the switch path, right to left; k0 is the right-hand switch
    steps: list[MeasurementStep] = []
    odd = list(range(len(switches) - 2, 0, -2))
    for pos in odd:
        sw = switches[pos]
        steps.extend(MeasurementStep(Z, leaf) for leaf in leaves.get(sw, []))
        if pos == odd[-1] and ending is Y:
            steps.append(MeasurementStep(Y, sw))
        else:
            steps.append(MeasurementStep(X, sw, switches[pos + 1]))
    return steps


def max_connect_protocol(spec: MultiStarSpec | Sequence[int], ending: PauliBasis | str = X) -> Protocol:
    """Protocol measuring every odd switch after removing its clients.

    Odd switches are processed from ``Sw_{m-2}`` down to ``Sw_1``. With
    ``ending="Y"`` the last switch measurement is a Y measurement, which
    leaves a bi-star instead of a star.
    """
    spec = _spec(spec)
    _require_odd(spec.m)
    switches = list(range(spec.m))
    leaves = {i: spec.leaf_ids(i) for i in switches}
    return Protocol(_sweep_steps(switches, leaves, PauliBasis(ending)))


def _check_bicolorable(trace: list[Graph]) -> None:
    for k, h in enumerate(trace):
        if compute_bicoloring(h) is None:
            raise ProtocolInvariantViolation(f"graph after step {k} is not bi-colorable")


def _finish_max_connect(
    g: Graph,
    protocol: Protocol,
    alpha_pred: int,
    cost_pred: int,
    check_lc: bool,
) -> MaxConnectOutcome:
    run = apply_protocol(g, protocol, keep_trace=True)
    final = run.graph
    if len(final) != alpha_pred or run.cost.total != cost_pred:
        raise ProtocolInvariantViolation(
            f"expected {alpha_pred} survivors at cost {cost_pred}, "
            f"got {len(final)} at cost {run.cost.total}"
        )
    if run.cost.total != run.cost.initial_vertices - run.cost.final_vertices:
        raise ProtocolInvariantViolation("cost does not match removed vertex count")
    if not is_star(final):
        raise ProtocolInvariantViolation(f"final graph is not a star: {classify_topology(final)}")
    _check_bicolorable(run.trace)
    lc_ok = False
    if check_lc and len(final) <= MAX_LC_VERTICES:
        if not are_lc_equivalent(final, build_complete(len(final))):
            raise ProtocolInvariantViolation("final star is not LC-equivalent to the complete graph")
        lc_ok = True
    return MaxConnectOutcome(
        protocol=protocol,
        final_graph=final,
        alpha=len(final),
        cost=run.cost,
        predicted_alpha=alpha_pred,
        predicted_cost=cost_pred,
        topology=classify_topology(final),
        trace=run.trace,
        lc_complete_checked=lc_ok,
    )


def generate_max_connect(
    spec: MultiStarSpec | Sequence[int],
    *,
    check_lc: bool = True,
    lc_limit: int = 10,
) -> MaxConnectOutcome:
    """Run the maximal-connectivity sweep on a multi-star and verify the result.

    Raises :class:`ProtocolInvariantViolation` if survivors or cost differ
    from the closed forms, if the result is not a star, if any intermediate
    graph loses bi-colorability, or (for at most ``lc_limit`` survivors and
    ``check_lc``) if the star is not LC-equivalent to the complete graph.
    """
    spec = _spec(spec)
    _require_odd(spec.m)
    g = build_multi_star(spec)
    protocol = max_connect_protocol(spec)
    alpha = predicted_alpha_hetero(spec.leaf_counts)
    cost = predicted_cost_hetero(spec.leaf_counts)
    return _finish_max_connect(g, protocol, alpha, cost, check_lc and alpha <= lc_limit)


def reduce_even_to_odd(
    spec: MultiStarSpec | Sequence[int], variant: str = "remove-last"
) -> tuple[Protocol, MultiStarSpec]:
    """Turn an even multi-star into an odd one by discarding one switch.

    ``variant="remove-last"`` Z-measures the clients of ``Sw_{m-1}`` and then
    the switch itself. ``variant="y-merge"`` Z-measures the clients of
    ``Sw_{m-2}`` and Y-measures that switch, which joins ``Sw_{m-3}`` to
    ``Sw_{m-1}`` directly. The returned spec lists the surviving switches'
    leaf counts in path order.
    """
    spec = _spec(spec)
    m = spec.m
    if m % 2:
        raise OddSwitchCount(f"expected an even number of switches, got m={m}")
    if variant == "remove-last":
        sw = m - 1
        steps = [MeasurementStep(Z, leaf) for leaf in spec.leaf_ids(sw)] + [MeasurementStep(Z, sw)]
    elif variant == "y-merge":
        if m < 3:
            raise ValueError("y-merge needs at least three switches")
        sw = m - 2
        steps = [MeasurementStep(Z, leaf) for leaf in spec.leaf_ids(sw)] + [MeasurementStep(Y, sw)]
    else:
        raise ValueError(f"unknown reduction variant {variant!r}")
    counts = [n for i, n in enumerate(spec.leaf_counts) if i != sw]
    return Protocol(steps), MultiStarSpec(counts)


def generate_even_max_connect(
    spec: MultiStarSpec | Sequence[int],
    variant: str = "remove-last",
    *,
    check_lc: bool = True,
    lc_limit: int = 10,
) -> MaxConnectOutcome:
    """Even-``m`` reduction followed by the odd sweep on the surviving switches."""
    spec = _spec(spec)
    reduction, reduced = reduce_even_to_odd(spec, variant)
    g = build_multi_star(spec)
    dropped = spec.m - 1 if variant == "remove-last" else spec.m - 2
    switches = [i for i in range(spec.m) if i != dropped]
    leaves = {i: spec.leaf_ids(i) for i in switches}
    protocol = reduction + Protocol(_sweep_steps(switches, leaves, X))
    alpha = predicted_alpha_hetero(reduced.leaf_counts)
    cost = len(reduction) + predicted_cost_hetero(reduced.leaf_counts)
    return _finish_max_connect(g, protocol, alpha, cost, check_lc and alpha <= lc_limit)


def generate_bi_star_variant(spec: MultiStarSpec | Sequence[int]) -> tuple[Protocol, Graph]:
    """The sweep with a final Y measurement, ending in a bi-star.

    Uses exactly ``(m - 1)/2`` switch measurements besides the client Z's.
    """
    spec = _spec(spec)
    _require_odd(spec.m)
    if spec.m < 3:
        raise ValueError("the bi-star variant needs at least three switches")
    protocol = max_connect_protocol(spec, ending=Y)
    switch_steps = [s for s in protocol if s.target < spec.m]
    if len(switch_steps) != (spec.m - 1) // 2:
        raise ProtocolInvariantViolation("unexpected number of switch measurements")
    run = apply_protocol(build_multi_star(spec), protocol)
    return protocol, run.graph


def _complete_bipartite_sides(g: Graph) -> tuple[int, int] | None:
    col = compute_bicoloring(g)
    if col is None or len(g) < 2:
        return None
    n0 = sum(1 for c in col.values() if c == 0)
    n1 = len(g) - n0
    if n0 == 0 or n1 == 0 or g.num_edges != n0 * n1:
        return None
    return n0, n1


def generate_extranet(g: Graph) -> tuple[Protocol, Graph]:
    """Connect every client of one bi-star side to every client of the other.

    X-measures the first center with the second as ``k0``, then Z-measures
    the second center, leaving ``K_{n1,n2}`` on the clients.
    """
    topo = classify_topology(g)
    if topo.kind is not TopologyKind.BI_STAR or min(topo.leaf_counts) < 1:
        raise TopologyMismatch(f"expected a bi-star with clients on both sides, got {topo}")
    c0, c1 = topo.centers
    n1, n2 = topo.leaf_counts
    protocol = Protocol([MeasurementStep(X, c0, c1), MeasurementStep(Z, c1)])
    final = apply_protocol(g, protocol).graph
    sides = _complete_bipartite_sides(final)
    if sides is None or sorted(sides) != sorted((n1, n2)):
        raise ProtocolInvariantViolation(f"extranet did not produce K_{{{n1},{n2}}}")
    return protocol, final


# --- tabulated m = 7 results -----------------------------------------------


class TableRow(NamedTuple):
    removal: tuple[int, ...]
    gates: tuple[MeasurementStep, ...] | None  # None: the maximal-connectivity sweep
    kind: TopologyKind
    centers: tuple[str, ...]  # as printed, dagger marks the majority holder

    @property
    def heavy(self) -> int:
        return sum(1 for c in self.centers if c.endswith("†"))


def _x(a: int, b: int) -> MeasurementStep:
    return MeasurementStep(X, a, b)


def _y(a: int) -> MeasurementStep:
    return MeasurementStep(Y, a)


M7_TABLE: dict[tuple[int, ...], TableRow] = {
    r.removal: r
    for r in [
        TableRow((1, 3, 5), None, TopologyKind.BI_STAR, ("0", "6†")),
        TableRow((1, 2, 3), (_x(1, 0), _x(3, 2)), TopologyKind.TRI_STAR, ("4†", "5", "6")),
        TableRow((2, 3, 4), (_x(2, 1), _x(4, 3)), TopologyKind.TRI_STAR, ("0", "5†", "6")),
        TableRow((1, 2, 4), (_y(1), _x(4, 5), _x(2, 3)), TopologyKind.BI_STAR, ("0", "6†")),
        TableRow((1, 2, 5), (_y(1), _x(5, 4), _x(2, 3)), TopologyKind.BI_STAR, ("0†", "6†")),
        TableRow((1, 3, 4), (_y(3), _x(4, 5), _x(1, 2)), TopologyKind.BI_STAR, ("0", "6†")),
    ]
}


def mirror_set(removal: Sequence[int], m: int) -> tuple[int, ...]:
    return tuple(sorted(m - 1 - i for i in removal))


def mirror_step(step: MeasurementStep, m: int) -> MeasurementStep:
    k0 = None if step.k0 is None else m - 1 - step.k0
    return MeasurementStep(step.basis, m - 1 - step.target, k0)


class RemovalOutcome(NamedTuple):
    protocol: Protocol
    graph: Graph
    topology: TopologyClass


def client_removal_steps(spec: MultiStarSpec, removal: Sequence[int]) -> list[MeasurementStep]:
    return [MeasurementStep(Z, leaf) for i in sorted(removal) for leaf in spec.leaf_ids(i)]


def table1_protocol(
    removal_set: Sequence[int],
    spec: MultiStarSpec | Sequence[int] = (1,) * 7,
    ending: PauliBasis | str = Y,
) -> RemovalOutcome:
    """Run the tabulated gate sequence for a choice of three switches on ``m = 7``.

    Mirror images of the tabulated sets use the mirrored sequence. The
    ``{1, 3, 5}`` row is the maximal-connectivity sweep; ``ending`` picks its
    final switch measurement (Y gives the tabulated bi-star, X the star).
    """
    spec = _spec(spec)
    if spec.m != 7:
        raise InvalidRemovalSet(f"the table is defined for m = 7, got m = {spec.m}")
    key = tuple(sorted(set(int(i) for i in removal_set)))
    if len(key) != 3 or len(removal_set) != 3 or not all(1 <= i <= 5 for i in key):
        raise InvalidRemovalSet(f"{sorted(removal_set)} is not three distinct switches from 1..5")
    mirrored = key not in M7_TABLE
    row = M7_TABLE[mirror_set(key, 7) if mirrored else key]
    if row.gates is None:
        gates = [s for s in max_connect_protocol(spec, ending=ending) if s.target < spec.m]
    else:
        gates = list(row.gates)
    if mirrored:
        gates = [mirror_step(s, 7) for s in gates]
    protocol = Protocol(client_removal_steps(spec, key) + gates)
    final = apply_protocol(build_multi_star(spec), protocol).graph
    return RemovalOutcome(protocol, final, classify_topology(final))


def heavy_centers(g: Graph, topo: TopologyClass | None = None) -> tuple[int, ...]:
    """Centers holding vertices other than their own original clients.

    These are the centers that accumulated clients during the protocol,
    i.e. the ones marked with a dagger in the tabulated results.
    """
    topo = classify_topology(g) if topo is None else topo
    core = set(topo.centers)
    out = []
    for c in topo.centers:
        own = switch_index(g.label(c))
        for w in g.neighbors(c):
            if w in core:
                continue
            if own is None or client_owner(g.label(w)) != own:
                out.append(c)
                break
    return tuple(out)
