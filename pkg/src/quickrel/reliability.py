"""Exact and sampled reliability for a (d, T) query.

The exact route evaluates Pr(X >= X^1 or ... or X >= X^sigma) by
inclusion-exclusion.  The intersection of upper sets is the upper set of
the componentwise maximum, and with independent arcs its probability is a
product of per-arc tail probabilities.  Subsets sharing the same join are
merged, which keeps the term count far below 2**sigma on typical inputs.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .enumerator import enumerate_all_mps
from .model import Network, Query, StateVector
from .qpath import path_lead_time

PMF_TOL = 1e-9
DEFAULT_SIGMA_CAP = 25
MC_BLOCK = 1 << 14
Z95 = 1.959963984540054


class TooManyVectorsError(RuntimeError):
    """Exact evaluation refused; the caller should fall back to Monte Carlo."""


@dataclass(frozen=True)
class ArcStateDistribution:
    pmf: tuple[float, ...]

    def __post_init__(self):
        pmf = tuple(float(p) for p in self.pmf)
        object.__setattr__(self, "pmf", pmf)
        if not pmf:
            raise ValueError("pmf must have at least one state")
        if any(not (0.0 <= p <= 1.0) for p in pmf):
            raise ValueError(f"pmf entries must lie in [0, 1]: {pmf}")
        if abs(math.fsum(pmf) - 1.0) > PMF_TOL:
            raise ValueError(f"pmf sums to {math.fsum(pmf)!r}, not 1")

    @property
    def max_state(self) -> int:
        return len(self.pmf) - 1

    @classmethod
    def uniform(cls, max_capacity: int) -> "ArcStateDistribution":
        k = max_capacity + 1
        return cls((1.0 / k,) * k)

    @classmethod
    def point(cls, max_capacity: int, state: int) -> "ArcStateDistribution":
        pmf = [0.0] * (max_capacity + 1)
        pmf[state] = 1.0
        return cls(tuple(pmf))


def check_distributions(net: Network, dists: Sequence[ArcStateDistribution]):
    if len(dists) != net.m:
        raise ValueError(f"expected {net.m} arc distributions, got {len(dists)}")
    for i, (arc, dist) in enumerate(zip(net.arcs, dists)):
        if len(dist.pmf) != arc.max_capacity + 1:
            raise ValueError(
                f"arc a{i + 1}: pmf has {len(dist.pmf)} entries, "
                f"expected max_capacity + 1 = {arc.max_capacity + 1}"
            )


def pr_at_least(dist: ArcStateDistribution, level: int) -> float:
    if level <= 0:
        return 1.0
    if level > dist.max_state:
        return 0.0
    return min(1.0, math.fsum(dist.pmf[level:]))


@dataclass(frozen=True)
class ReliabilityResult:
    value: float
    solution_count: int
    term_count: int


def union_probability(
    net: Network,
    dists: Sequence[ArcStateDistribution],
    minimal_vectors,
    sigma_cap: int = DEFAULT_SIGMA_CAP,
) -> ReliabilityResult:
    """Probability that the arc state dominates at least one of ``minimal_vectors``."""
    check_distributions(net, dists)
    vectors = [tuple(int(v) for v in x) for x in minimal_vectors]
    M = net.max_capacities
    for x in vectors:
        if len(x) != net.m:
            raise ValueError(f"vector {x} has {len(x)} components, network has {net.m} arcs")
        if any(xi < 0 or xi > mi for xi, mi in zip(x, M)):
            raise ValueError(f"vector {x} is not within 0..M = {M}")
    if len(set(vectors)) != len(vectors):
        raise ValueError("minimal vectors must be pairwise distinct")
    if len(vectors) > sigma_cap:
        raise TooManyVectorsError(
            f"{len(vectors)} minimal vectors exceed the inclusion-exclusion cap "
            f"of {sigma_cap}; use Monte Carlo"
        )

    tails = [[pr_at_least(dist, k) for k in range(dist.max_state + 1)] for dist in dists]

    # coefficient of each distinct join across all nonempty subsets seen so far
    coeff: dict[StateVector, int] = {}
    for x in vectors:
        update = {x: 1}
        for join, c in coeff.items():
            j = tuple(max(a, b) for a, b in zip(join, x))
            update[j] = update.get(j, 0) - c
        for j, c in update.items():
            total = coeff.get(j, 0) + c
            if total:
                coeff[j] = total
            else:
                coeff.pop(j, None)

    terms = (c * math.prod(tails[i][v] for i, v in enumerate(j)) for j, c in coeff.items())
    value = math.fsum(terms)
    if value < -PMF_TOL or value > 1 + PMF_TOL:
        raise ArithmeticError(f"inclusion-exclusion left [0, 1]: {value!r}")
    value = min(1.0, max(0.0, value))
    return ReliabilityResult(value, len(vectors), len(coeff))


@dataclass(frozen=True)
class MonteCarloResult:
    estimate: float
    half_width: float
    samples: int


def _sample_states(rng: np.random.Generator, dists, size: int) -> np.ndarray:
    cols = [rng.choice(len(d.pmf), size=size, p=np.asarray(d.pmf)) for d in dists]
    return np.stack(cols, axis=1)


def _quickest_within(states: np.ndarray, paths, d: int, T: int) -> np.ndarray:
    ok = np.zeros(len(states), dtype=bool)
    for arcs, lead in paths:
        cap = states[:, list(arcs)].min(axis=1)
        # zero capacity never arrives; the clamp only avoids dividing by zero
        time = lead - (-d // np.maximum(cap, 1))
        ok |= (cap > 0) & (time <= T)
    return ok


def monte_carlo_reliability(
    net: Network,
    dists: Sequence[ArcStateDistribution],
    q: Query,
    samples: int = 100_000,
    seed: int = 0,
    workers: Optional[int] = None,
) -> MonteCarloResult:
    """Sample arc states and count how often the quickest path meets the budget.

    Samples are drawn in fixed-size blocks, each from its own child seed, so
    the estimate depends only on ``seed`` and ``samples``, never on
    ``workers``.  The half-width is the 95% normal-approximation interval.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    check_distributions(net, dists)
    paths = [(p.arcs, path_lead_time(net, p)) for p in enumerate_all_mps(net)]

    sizes = [MC_BLOCK] * (samples // MC_BLOCK)
    if samples % MC_BLOCK:
        sizes.append(samples % MC_BLOCK)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(block):
        size, ss = block
        states = _sample_states(np.random.default_rng(ss), dists, size)
        return int(_quickest_within(states, paths, q.demand, q.time_budget).sum())

    blocks = list(zip(sizes, seeds))
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            hits = sum(pool.map(run, blocks))
    else:
        hits = sum(map(run, blocks))

    p = hits / samples
    half = Z95 * math.sqrt(p * (1 - p) / samples)
    return MonteCarloResult(p, half, samples)
