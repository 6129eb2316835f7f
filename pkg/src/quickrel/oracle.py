"""Brute-force reference results over the full state space.

Nothing here prunes.  Every state vector X <= M is materialised on a dense
grid (one numpy axis per arc).  For each one the quickest single-path time
is computed straight from its definition.  Minimal elements come from an
exact "is there a feasible state strictly below" test.  This code shares no
search logic with the enumerator.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from .enumerator import enumerate_all_mps
from .model import Network, Query, StateVector
from .qpath import MinimalPath, Time, UNBOUNDED, path_lead_time, path_transmission_time
from .reliability import ArcStateDistribution, check_distributions

DEFAULT_STATE_CAP = 10**7


class StateSpaceTooLarge(RuntimeError):
    pass


def rho(net: Network, x: StateVector, d: int, all_mps: Sequence[MinimalPath]) -> Time:
    """Quickest time to send ``d`` units over a single minimal path under ``x``."""
    return min((path_transmission_time(net, p, x, d) for p in all_mps), default=UNBOUNDED)


def state_space_size(net: Network) -> int:
    return math.prod(a.max_capacity + 1 for a in net.arcs)


def _open_grid(net: Network) -> list[np.ndarray]:
    m = net.m
    axes = []
    for i, arc in enumerate(net.arcs):
        shape = [1] * m
        shape[i] = arc.max_capacity + 1
        axes.append(np.arange(arc.max_capacity + 1, dtype=np.int64).reshape(shape))
    return axes


def feasibility_grid(
    net: Network,
    q: Query,
    all_mps: Optional[Sequence[MinimalPath]] = None,
    state_cap: int = DEFAULT_STATE_CAP,
) -> np.ndarray:
    """Boolean array over every X <= M: True where rho(X, d) <= T."""
    size = state_space_size(net)
    if size > state_cap:
        raise StateSpaceTooLarge(f"{size} states exceed the brute-force cap of {state_cap}")
    if all_mps is None:
        all_mps = enumerate_all_mps(net)
    shape = tuple(a.max_capacity + 1 for a in net.arcs)
    axes = _open_grid(net)
    d, T = q.demand, q.time_budget
    ok = np.zeros(shape, dtype=bool)
    for p in all_mps:
        cap = axes[p.arcs[0]]
        for i in p.arcs[1:]:
            cap = np.minimum(cap, axes[i])
        time = path_lead_time(net, p) - (-d // np.maximum(cap, 1))
        ok |= np.broadcast_to((cap > 0) & (time <= T), shape)
    return ok


def minimal_elements(feasible: np.ndarray) -> np.ndarray:
    """Mask of feasible cells with no other feasible cell componentwise below them.

    ``below[X]`` records whether some feasible Y <= X exists.  A feasible X
    is minimal iff ``below[X - e_i]`` is False for every axis i with
    ``x_i > 0``, since any Y <= X, Y != X satisfies Y <= X - e_i for some i.
    """
    below = feasible.copy()
    for axis in range(feasible.ndim):
        below = np.logical_or.accumulate(below, axis=axis)
    minimal = feasible.copy()
    for axis in range(feasible.ndim):
        shifted = np.zeros_like(below)
        src = [slice(None)] * feasible.ndim
        dst = [slice(None)] * feasible.ndim
        src[axis] = slice(None, -1)
        dst[axis] = slice(1, None)
        shifted[tuple(dst)] = below[tuple(src)]
        minimal &= ~shifted
    return minimal


def brute_force_theta_min(
    net: Network, q: Query, state_cap: int = DEFAULT_STATE_CAP
) -> list[StateVector]:
    feasible = feasibility_grid(net, q, state_cap=state_cap)
    cells = np.argwhere(minimal_elements(feasible))
    return sorted(tuple(int(v) for v in row) for row in cells)


def brute_force_reliability(
    net: Network,
    dists: Sequence[ArcStateDistribution],
    q: Query,
    state_cap: int = DEFAULT_STATE_CAP,
) -> float:
    """Sum of Pr(X) over every state X whose quickest path meets the budget."""
    check_distributions(net, dists)
    feasible = feasibility_grid(net, q, state_cap=state_cap)
    prob = np.ones((), dtype=np.float64)
    for dist in dists:
        prob = np.multiply.outer(prob, np.asarray(dist.pmf))
    return math.fsum(prob[feasible].tolist())
