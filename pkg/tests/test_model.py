import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quickrel.model import (
    Arc,
    Network,
    NetworkError,
    Query,
    arc_between,
    build_node_child_matrix,
    make_network,
    validate_network,
)


def test_fig1_is_valid(fig1):
    assert fig1.node_count == 4
    assert fig1.max_capacities == (5, 4, 6, 4, 3, 6)
    assert fig1.lead_times == (4, 4, 1, 4, 3, 1)


def test_single_arc_is_valid():
    net = make_network(2, [(1, 2, 3, 1)])
    assert net.m == 1


@pytest.mark.parametrize(
    "n, arcs, match",
    [
        (2, [(1, 2, 1, 1), (2, 1, 4, 0)], "duplicate"),
        (3, [(1, 2, 1, 1), (2, 4, 1, 1)], "outside"),
        (3, [(1, 2, 1, 1), (2, 2, 1, 1), (2, 3, 1, 1)], "self-loop"),
        (1, [(1, 1, 1, 1)], "node_count"),
        (3, [], "no arcs"),
        (3, [(1, 2, -1, 0), (2, 3, 1, 1)], "max_capacity"),
        (3, [(1, 2, 1, -2), (2, 3, 1, 1)], "lead_time"),
        (3, [(1, 2, 1, 1)], "sink"),
        (3, [(2, 3, 1, 1)], "source"),
    ],
)
def test_validation_errors(n, arcs, match):
    with pytest.raises(NetworkError, match=match):
        make_network(n, arcs)


def test_validation_rejects_float_capacity():
    with pytest.raises(NetworkError):
        validate_network(Network(2, (Arc(1, 2, 2.5, 1),)))


def test_endpoints_are_canonicalized():
    net = make_network(3, [(2, 1, 1, 1), (3, 2, 1, 1)])
    assert [a.endpoints for a in net.arcs] == [(1, 2), (2, 3)]


def test_directed_keeps_orientation_and_allows_antiparallel():
    net = make_network(3, [(1, 2, 1, 1), (2, 3, 1, 1), (3, 2, 1, 1)], directed=True)
    assert net.arc_between(2, 3) == 1
    assert net.arc_between(3, 2) == 2
    assert net.arc_between(2, 1) is None


def test_query_rejects_nonpositive():
    with pytest.raises(ValueError):
        Query(0, 3)
    with pytest.raises(ValueError):
        Query(2, 0)


def test_fig1_node_child_matrix(fig1):
    assert build_node_child_matrix(fig1).tolist() == [
        [2, 3, 4],
        [3, 4, 0],
        [2, 4, 0],
        [0, 0, 0],
    ]


def test_single_arc_matrix():
    assert build_node_child_matrix(make_network(2, [(1, 2, 5, 1)])).tolist() == [[2], [0]]


def test_path_graph_matrix():
    net = make_network(3, [(1, 2, 1, 1), (2, 3, 1, 1)])
    assert build_node_child_matrix(net).tolist() == [[2, 0], [3, 0], [0, 0]]


def test_matrix_slot_lookup(fig1):
    B = build_node_child_matrix(fig1)
    assert B.child(1, 1) == 2
    assert B.child(2, 3) == 0
    assert B.child(2, 4) == 0  # past the row end


def test_directed_matrix_uses_out_arcs():
    net = make_network(4, [(1, 2, 1, 1), (3, 2, 1, 1), (2, 4, 1, 1), (1, 3, 1, 1)], directed=True)
    assert build_node_child_matrix(net).tolist() == [[2, 3], [4, 0], [2, 0], [0, 0]]


def test_arc_between(fig1):
    assert arc_between(fig1, 1, 4) == 2  # a3
    assert arc_between(fig1, 4, 1) == 2
    assert arc_between(fig1, 1, 1) is None


@st.composite
def undirected_networks(draw):
    n = draw(st.integers(2, 7))
    pairs = [(s, t) for s in range(1, n + 1) for t in range(s + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=1))
    chosen = sorted(set(chosen) | {(1, 2), (n - 1, n)} if n > 2 else {(1, 2)})
    return make_network(n, [(s, t, 1, 1) for s, t in chosen])


@settings(max_examples=200, deadline=None)
@given(undirected_networks())
def test_matrix_structure(net):
    B = build_node_child_matrix(net)
    n = net.node_count
    assert B == build_node_child_matrix(net)
    assert all(c == 0 for c in B.rows[n - 1])
    nbrs = {v: set() for v in range(1, n + 1)}
    for a in net.arcs:
        nbrs[a.tail].add(a.head)
        nbrs[a.head].add(a.tail)
    assert set(B.children(1)) == nbrs[1]
    assert len(B.children(1)) == len(nbrs[1])
    for r in range(2, n):
        row = B.children(r)
        assert len(row) == len(set(row))
        assert set(row) == nbrs[r] - {1}
        # internal-internal arcs show in both rows; a source arc only in row 1
        as_child = sum(row_.count(r) for row_ in B.rows)
        internal = len(nbrs[r] - {1, n})
        assert as_child + len(row) == 2 * internal + (1 in nbrs[r]) + (n in nbrs[r])


@settings(max_examples=100, deadline=None)
@given(undirected_networks(), st.data())
def test_arc_between_symmetric(net, data):
    s = data.draw(st.integers(1, net.node_count))
    t = data.draw(st.integers(1, net.node_count))
    assert net.arc_between(s, t) == net.arc_between(t, s)
