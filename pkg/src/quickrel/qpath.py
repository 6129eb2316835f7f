"""Transmission-time arithmetic for single minimal paths.

All quantities are integers.  A zero-capacity arc or path cannot move data,
so its transmission time is ``math.inf`` (compares above every integer).
When no capacity can meet a time budget, :func:`min_required_capacity`
returns ``None``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .model import Network, StateVector

UNBOUNDED = math.inf

Time = Union[int, float]


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class MinimalPath:
    nodes: tuple[int, ...]
    arcs: tuple[int, ...]

    def __post_init__(self):
        if len(self.arcs) != len(self.nodes) - 1:
            raise ValueError("a path over k nodes uses exactly k - 1 arcs")
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError(f"path revisits a node: {self.nodes}")

    @classmethod
    def from_nodes(cls, net: Network, nodes) -> "MinimalPath":
        nodes = tuple(nodes)
        arcs = []
        for s, t in zip(nodes, nodes[1:]):
            idx = net.arc_between(s, t)
            if idx is None:
                raise ValueError(f"no arc between nodes {s} and {t}")
            arcs.append(idx)
        return cls(nodes, tuple(arcs))

    def label(self) -> str:
        return "{" + ",".join(f"a{i + 1}" for i in self.arcs) + "}"


def path_lead_time(net: Network, p: MinimalPath) -> int:
    return sum(net.arcs[i].lead_time for i in p.arcs)


def path_capacity(p: MinimalPath, x: StateVector) -> int:
    return min(x[i] for i in p.arcs)


def arc_transmission_time(lead: int, capacity: int, d: int) -> Time:
    """Time to push ``d`` units across an arc: ``lead + ceil(d / capacity)``."""
    if capacity <= 0:
        return UNBOUNDED
    return lead + ceil_div(d, capacity)


def path_transmission_time(net: Network, p: MinimalPath, x: StateVector, d: int) -> Time:
    return arc_transmission_time(path_lead_time(net, p), path_capacity(p, x), d)


def min_required_capacity(lp: int, d: int, t_budget: int) -> Optional[int]:
    """Smallest path capacity that delivers ``d`` units within ``t_budget``.

    A path whose lead time already reaches the budget is infeasible at any
    capacity, since even unbounded capacity costs one extra time unit.
    """
    if t_budget <= lp:
        return None
    return ceil_div(d, t_budget - lp)
