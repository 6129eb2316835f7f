import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quickrel.enumerator import find_minimal_vectors
from quickrel.instances import random_instances
from quickrel.model import Query, make_network
from quickrel.oracle import brute_force_reliability
from quickrel.reliability import (
    ArcStateDistribution,
    TooManyVectorsError,
    monte_carlo_reliability,
    pr_at_least,
    union_probability,
)

FIG1_SOLUTIONS = [(0, 0, 1, 0, 0, 0), (0, 2, 0, 0, 0, 2)]


def test_pr_at_least():
    dist = ArcStateDistribution((0.1, 0.2, 0.7))
    assert pr_at_least(dist, 1) == pytest.approx(0.9, abs=1e-15)
    assert pr_at_least(dist, 0) == 1.0
    assert pr_at_least(dist, 5) == 0.0


@pytest.mark.parametrize("pmf", [(), (0.5, 0.6), (-0.1, 1.1), (0.3, 0.3)])
def test_bad_pmf(pmf):
    with pytest.raises(ValueError):
        ArcStateDistribution(pmf)


def test_pmf_length_must_match_capacity(fig1):
    dists = [ArcStateDistribution.uniform(a.max_capacity) for a in fig1.arcs]
    dists[3] = ArcStateDistribution.uniform(2)
    with pytest.raises(ValueError, match="a4"):
        union_probability(fig1, dists, FIG1_SOLUTIONS)


def test_empty_union(fig1, fig1_uniform):
    assert union_probability(fig1, fig1_uniform, []).value == 0.0


def test_point_mass_at_max(fig1):
    dists = [ArcStateDistribution.point(a.max_capacity, a.max_capacity) for a in fig1.arcs]
    assert union_probability(fig1, dists, FIG1_SOLUTIONS).value == 1.0


def test_single_event(fig1, fig1_uniform):
    dists = list(fig1_uniform)
    dists[2] = ArcStateDistribution((0.2, 0.1, 0.1, 0.2, 0.2, 0.1, 0.1))
    res = union_probability(fig1, dists, [(0, 0, 1, 0, 0, 0)])
    assert res.value == pytest.approx(0.8, abs=1e-12)
    assert (res.solution_count, res.term_count) == (1, 1)


def test_fig1_uniform_closed_form(fig1, fig1_uniform):
    # Pr(x3 >= 1) = 6/7, Pr(x2 >= 2, x6 >= 2) = 3/5 * 5/7 = 3/7, independent
    a, b = 6 / 7, 3 / 7
    res = union_probability(fig1, fig1_uniform, FIG1_SOLUTIONS)
    assert res.value == pytest.approx(a + b - a * b, abs=1e-12)
    assert res.value == pytest.approx(
        brute_force_reliability(fig1, fig1_uniform, Query(4, 7)), abs=1e-12
    )
    assert res.term_count == 3


def test_rejects_out_of_range_and_duplicates(fig1, fig1_uniform):
    with pytest.raises(ValueError):
        union_probability(fig1, fig1_uniform, [(9, 0, 0, 0, 0, 0)])
    with pytest.raises(ValueError):
        union_probability(fig1, fig1_uniform, [FIG1_SOLUTIONS[0]] * 2)


def test_sigma_cap(fig1, fig1_uniform):
    with pytest.raises(TooManyVectorsError):
        union_probability(fig1, fig1_uniform, FIG1_SOLUTIONS, sigma_cap=1)


def _brute_union(dists, vectors):
    total = 0.0
    for x in itertools.product(*(range(len(d.pmf)) for d in dists)):
        if any(all(a >= b for a, b in zip(x, v)) for v in vectors):
            total += math.prod(d.pmf[k] for d, k in zip(dists, x))
    return total


@st.composite
def union_cases(draw):
    m = draw(st.integers(1, 4))
    caps = draw(st.lists(st.integers(0, 3), min_size=m, max_size=m))
    dists = []
    for c in caps:
        w = draw(st.lists(st.floats(0.01, 1.0), min_size=c + 1, max_size=c + 1))
        dists.append(ArcStateDistribution(tuple(np.asarray(w) / sum(w))))
    vectors = draw(st.lists(st.tuples(*(st.integers(0, c) for c in caps)), unique=True, max_size=6))
    # a star from the source makes any m arcs a valid network
    net = make_network(m + 1, [(1, k + 2, c, 0) for k, c in enumerate(caps)])
    return net, dists, vectors


@settings(max_examples=300, deadline=None)
@given(union_cases())
def test_union_matches_enumeration(case):
    net, dists, vectors = case
    value = union_probability(net, dists, vectors).value
    assert 0.0 <= value <= 1.0
    assert value == pytest.approx(_brute_union(dists, vectors), abs=1e-9)
    if len(vectors) == 1:
        expected = math.prod(pr_at_least(d, v) for d, v in zip(dists, vectors[0]))
        assert value == pytest.approx(expected, abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(union_cases(), st.data())
def test_adding_vector_never_decreases(case, data):
    net, dists, vectors = case
    extra = data.draw(st.tuples(*(st.integers(0, a.max_capacity) for a in net.arcs)))
    if extra in vectors:
        return
    before = union_probability(net, dists, vectors).value
    after = union_probability(net, dists, vectors + [extra]).value
    assert after >= before - 1e-12


@pytest.mark.parametrize("inst", list(random_instances(60, seed=300)), ids=lambda i: f"seed{i.seed}")
def test_exact_matches_brute_force(inst):
    vectors = find_minimal_vectors(inst.net, inst.query)
    exact = union_probability(inst.net, inst.dists, vectors).value
    assert exact == pytest.approx(brute_force_reliability(inst.net, inst.dists, inst.query), abs=1e-9)


def test_reliability_monotone_in_d_and_T(fig1, fig1_uniform):
    R = {}
    for d, T in itertools.product(range(1, 13), range(1, 16)):
        R[d, T] = union_probability(fig1, fig1_uniform, find_minimal_vectors(fig1, Query(d, T))).value
    for (d, T), r in R.items():
        if (d + 1, T) in R:
            assert R[d + 1, T] <= r + 1e-12
        if (d, T + 1) in R:
            assert R[d, T + 1] >= r - 1e-12


def test_mc_point_masses(fig1):
    at_max = [ArcStateDistribution.point(a.max_capacity, a.max_capacity) for a in fig1.arcs]
    res = monte_carlo_reliability(fig1, at_max, Query(4, 7), samples=2000, seed=1)
    assert (res.estimate, res.half_width) == (1.0, 0.0)
    at_zero = [ArcStateDistribution.point(a.max_capacity, 0) for a in fig1.arcs]
    assert monte_carlo_reliability(fig1, at_zero, Query(4, 7), samples=2000, seed=1).estimate == 0.0


def test_mc_deterministic_and_partition_independent(fig1, fig1_uniform):
    q = Query(4, 7)
    a = monte_carlo_reliability(fig1, fig1_uniform, q, samples=40_000, seed=5)
    b = monte_carlo_reliability(fig1, fig1_uniform, q, samples=40_000, seed=5, workers=4)
    assert a == b
    c = monte_carlo_reliability(fig1, fig1_uniform, q, samples=40_000, seed=6)
    assert c.estimate != a.estimate


def test_mc_close_to_exact(fig1, fig1_uniform):
    exact = union_probability(fig1, fig1_uniform, FIG1_SOLUTIONS).value
    res = monte_carlo_reliability(fig1, fig1_uniform, Query(4, 7), samples=100_000, seed=11)
    assert abs(res.estimate - exact) <= 3 * res.half_width


def test_mc_rejects_zero_samples(fig1, fig1_uniform):
    with pytest.raises(ValueError):
        monte_carlo_reliability(fig1, fig1_uniform, Query(4, 7), samples=0)
