"""Exception hierarchy shared by every gsconnect module."""

from __future__ import annotations

__all__ = [
    "GraphStateError",
    "VertexNotFound",
    "InvalidGraph",
    "SizeMismatch",
    "OrbitBoundExceeded",
    "InvalidSpecialNeighbor",
    "ProtocolStepError",
    "EvenSwitchCount",
    "OddSwitchCount",
    "ProtocolInvariantViolation",
    "TopologyMismatch",
    "InvalidRemovalSet",
    "SearchBoundExceeded",
    "InvalidTableau",
]


class GraphStateError(Exception):
    """Base class for all gsconnect errors."""

    code = "error"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class VertexNotFound(GraphStateError, KeyError):
    code = "vertex_not_found"

    def __init__(self, vertex: int) -> None:
        self.vertex = vertex
        super().__init__(f"vertex {vertex} is not present in the graph")

    def __str__(self) -> str:  # KeyError would repr() the message
        return self.args[0]


class InvalidGraph(GraphStateError, ValueError):
    code = "invalid_graph"


class SizeMismatch(GraphStateError, ValueError):
    code = "size_mismatch"


class OrbitBoundExceeded(GraphStateError, RuntimeError):
    code = "orbit_bound_exceeded"


class InvalidSpecialNeighbor(GraphStateError, ValueError):
    code = "invalid_special_neighbor"


class ProtocolStepError(GraphStateError):
    """A protocol step failed; wraps the underlying error with its index."""

    code = "protocol_step_error"

    def __init__(self, index: int, cause: Exception) -> None:
        self.index = index
        self.cause = cause
        super().__init__(f"step {index}: {cause}")

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["step"] = self.index
        d["cause"] = getattr(self.cause, "code", type(self.cause).__name__)
        return d


class EvenSwitchCount(GraphStateError, ValueError):
    code = "even_switch_count"


class OddSwitchCount(GraphStateError, ValueError):
    code = "odd_switch_count"


class ProtocolInvariantViolation(GraphStateError, AssertionError):
    code = "protocol_invariant_violation"


class TopologyMismatch(GraphStateError, ValueError):
    code = "topology_mismatch"


class InvalidRemovalSet(GraphStateError, ValueError):
    code = "invalid_removal_set"


class SearchBoundExceeded(GraphStateError, RuntimeError):
    code = "search_bound_exceeded"


class InvalidTableau(GraphStateError, ValueError):
    code = "invalid_tableau"
