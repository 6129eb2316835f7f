"""Seeded random small networks for cross-checking the solver against the oracle."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

import numpy as np

from .model import Network, Query, make_network
from .reliability import ArcStateDistribution

MAX_ARCS = 9


@dataclass(frozen=True)
class Instance:
    seed: int
    net: Network
    dists: tuple[ArcStateDistribution, ...]
    query: Query


def fig1_network() -> Network:
    """The four-node benchmark: arcs a1..a6 = (1,2),(1,3),(1,4),(2,3),(2,4),(3,4)."""
    M = (5, 4, 6, 4, 3, 6)
    L = (4, 4, 1, 4, 3, 1)
    pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    return make_network(4, [(s, t, m, l) for (s, t), m, l in zip(pairs, M, L)], name="fig1")


def random_instance(seed: int, max_arcs: int = MAX_ARCS) -> Instance:
    """Connected network on 3..6 nodes with a forced 1-2-...-n spine.

    Each non-spine pair is joined with probability 0.5; draws with more than
    ``max_arcs`` arcs are redrawn from the same stream.  Capacities are in
    1..4, lead times in 0..5, d in 1..6 and T in 1..12.  Each arc gets a
    Dirichlet(1, ..., 1) pmf over its capacity states.
    """
    rng = np.random.default_rng(seed)
    while True:
        n = int(rng.integers(3, 7))
        spine = {(k, k + 1) for k in range(1, n)}
        extra = [p for p in combinations(range(1, n + 1), 2) if p not in spine]
        chosen = sorted(spine | {p for p in extra if rng.random() < 0.5})
        if len(chosen) <= max_arcs:
            break
    rows = [
        (s, t, int(rng.integers(1, 5)), int(rng.integers(0, 6)))
        for s, t in chosen
    ]
    net = make_network(n, rows, name=f"random-{seed}")
    dists = tuple(
        ArcStateDistribution(tuple(rng.dirichlet(np.ones(arc.max_capacity + 1))))
        for arc in net.arcs
    )
    query = Query(int(rng.integers(1, 7)), int(rng.integers(1, 13)))
    return Instance(seed, net, dists, query)


def random_instances(
    count: int, seed: int = 0, query: Optional[Query] = None
) -> Iterator[Instance]:
    """``count`` instances with seeds ``seed, seed + 1, ...``; ``query`` overrides the drawn one."""
    for k in range(count):
        inst = random_instance(seed + k)
        if query is not None:
            inst = Instance(inst.seed, inst.net, inst.dists, query)
        yield inst
