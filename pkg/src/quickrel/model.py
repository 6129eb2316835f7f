"""Network data model, validation and the node-child matrix.

Nodes are numbered 1..n with node 1 the source and node n the sink.  Arcs
are kept in a fixed order; that order defines the component order of every
state vector attached to the network.  Arc indices are 0-based in code and
rendered as ``a1, a2, ...`` for humans.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence, Tuple

StateVector = Tuple[int, ...]


class NetworkError(ValueError):
    """Raised when a network violates a structural invariant."""


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    max_capacity: int
    lead_time: int

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.tail, self.head)


@dataclass(frozen=True)
class Query:
    """Demand ``d`` (data units) to be sent within ``T`` time units."""

    demand: int
    time_budget: int

    def __post_init__(self):
        for name in ("demand", "time_budget"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class Network:
    node_count: int
    arcs: tuple[Arc, ...]
    directed: bool = False
    name: str = ""
    description: str = field(default="", compare=False)

    @property
    def m(self) -> int:
        return len(self.arcs)

    @property
    def source(self) -> int:
        return 1

    @property
    def sink(self) -> int:
        return self.node_count

    @property
    def max_capacities(self) -> StateVector:
        return tuple(a.max_capacity for a in self.arcs)

    @property
    def lead_times(self) -> tuple[int, ...]:
        return tuple(a.lead_time for a in self.arcs)

    @cached_property
    def _arc_index(self) -> dict[tuple[int, int], int]:
        index = {}
        for i, arc in enumerate(self.arcs):
            index[(arc.tail, arc.head)] = i
            if not self.directed:
                index[(arc.head, arc.tail)] = i
        return index

    def arc_between(self, s: int, t: int) -> Optional[int]:
        """Index of the arc joining ``s`` to ``t``, or None if there is none."""
        return self._arc_index.get((s, t))

    def zero_vector(self) -> StateVector:
        return (0,) * self.m


def arc_between(net: Network, s: int, t: int) -> Optional[int]:
    return net.arc_between(s, t)


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def validate_network(net: Network) -> Network:
    """Check every structural invariant and return a canonical copy.

    For undirected networks each arc is rewritten with ``tail < head``.
    Raises :class:`NetworkError` on the first violation found.
    """
    n = net.node_count
    if not _is_int(n) or n < 2:
        raise NetworkError(f"node_count must be an integer >= 2, got {n!r}")
    if not net.arcs:
        raise NetworkError("network has no arcs")

    seen: dict[tuple[int, int], int] = {}
    canonical = []
    for i, arc in enumerate(net.arcs):
        label = f"arc a{i + 1}"
        for value in arc.endpoints:
            if not _is_int(value) or not 1 <= value <= n:
                raise NetworkError(f"{label}: endpoint {value!r} outside 1..{n}")
        if arc.tail == arc.head:
            raise NetworkError(f"{label}: self-loop at node {arc.tail}")
        if not _is_int(arc.max_capacity) or arc.max_capacity < 0:
            raise NetworkError(f"{label}: max_capacity must be a nonnegative integer")
        if not _is_int(arc.lead_time) or arc.lead_time < 0:
            raise NetworkError(f"{label}: lead_time must be a nonnegative integer")

        if net.directed:
            key = arc.endpoints
        else:
            key = (min(arc.endpoints), max(arc.endpoints))
        if key in seen:
            raise NetworkError(
                f"{label}: duplicate arc between nodes {key[0]} and {key[1]} "
                f"(already a{seen[key] + 1})"
            )
        seen[key] = i
        canonical.append(Arc(key[0], key[1], arc.max_capacity, arc.lead_time))

    touched = {v for key in seen for v in key}
    if 1 not in touched:
        raise NetworkError("no arc touches the source node 1")
    if n not in touched:
        raise NetworkError(f"no arc touches the sink node {n}")

    return Network(n, tuple(canonical), net.directed, net.name, net.description)


def make_network(
    node_count: int,
    arcs: Iterable[Sequence[int]],
    directed: bool = False,
    name: str = "",
) -> Network:
    """Build and validate a network from ``(tail, head, max_capacity, lead_time)`` rows."""
    built = tuple(Arc(*map(_coerce, row)) for row in arcs)
    return validate_network(Network(node_count, built, directed, name))


def _coerce(value):
    # numpy integers from generators are accepted, floats are not
    if hasattr(value, "__index__") and not isinstance(value, bool):
        return int(value.__index__())
    return value


@dataclass(frozen=True)
class NodeChildMatrix:
    """n x q child table; row ``s - 1`` holds the children of node ``s``, 0-padded.

    ``q`` is the largest out-degree over nodes 1..n-1, with an undirected arc
    counted as leaving both of its ends.
    """

    rows: tuple[tuple[int, ...], ...]

    @property
    def width(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def child(self, s: int, slot: int) -> int:
        """Entry B(s, slot) with 1-based ``slot``; 0 past the end of the row."""
        row = self.rows[s - 1]
        return row[slot - 1] if slot <= len(row) else 0

    def children(self, s: int) -> tuple[int, ...]:
        return tuple(c for c in self.rows[s - 1] if c)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def build_node_child_matrix(net: Network) -> NodeChildMatrix:
    n = net.node_count
    children: list[set[int]] = [set() for _ in range(n + 1)]
    out_degree = [0] * (n + 1)
    for arc in net.arcs:
        pairs = [(arc.tail, arc.head)]
        if not net.directed:
            pairs.append((arc.head, arc.tail))
        for s, t in pairs:
            out_degree[s] += 1
            # the sink has no children and nobody re-enters the source
            if s == n or t == 1:
                continue
            children[s].add(t)

    # q counts every arc leaving a node, so rows may carry spare zero slots
    width = max(out_degree[1:n])
    rows = []
    for s in range(1, n + 1):
        row = sorted(children[s])
        rows.append(tuple(row + [0] * (width - len(row))))
    return NodeChildMatrix(tuple(rows))
