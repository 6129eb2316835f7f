"""Direct generation of the minimal state vectors for a (d, T) query.

The search walks the node-child matrix with an explicit cursor per node,
growing one path from the source.  An extension ``s -> t`` survives only if
the accumulated lead time stays strictly under ``T`` and the capacity the
path would need, ``ceil(d / (T - lead))``, fits under every arc so far.
Each time the sink is reached the path yields one vector: the required
capacity on the path's arcs, zero elsewhere.  No minimal-path list is
needed up front.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .model import Network, NodeChildMatrix, Query, StateVector, build_node_child_matrix
from .qpath import MinimalPath, ceil_div


@dataclass(frozen=True)
class TraceEvent:
    """One decision of the search.

    ``action`` is one of ``extend``, ``prune-lead``, ``prune-capacity``,
    ``skip-repeat``, ``emit``, ``backtrack`` or ``stop``.  ``lt`` and ``kap``
    are the values *before* the decision; ``eta`` is the capacity requirement
    computed for the extension, when one was computed.
    """

    step: int
    action: str
    s: int
    t: int
    lt: int
    kap: float
    eta: Optional[int] = None
    path: tuple[int, ...] = ()


Tracer = Callable[[TraceEvent], None]


@dataclass
class SearchState:
    path: list[int]
    cursor: list[int]
    lt: int = 0
    kap: float = math.inf
    caps: list[int] = field(default_factory=list)
    leads: list[int] = field(default_factory=list)
    etas: list[int] = field(default_factory=list)

    @classmethod
    def start(cls, n: int) -> "SearchState":
        # cursor[r] is the 1-based slot f(r) of the next child to try
        return cls(path=[1], cursor=[1] * (n + 1))

    def push(self, t: int, lead: int, cap: int, eta: int):
        self.lt += lead
        self.kap = min(self.kap, cap)
        self.path.append(t)
        self.leads.append(lead)
        self.caps.append(cap)
        self.etas.append(eta)

    def pop(self):
        self.path.pop()
        self.lt -= self.leads.pop()
        self.caps.pop()
        self.etas.pop()
        self.kap = min(self.caps) if self.caps else math.inf


def find_minimal_vectors(
    net: Network,
    q: Query,
    trace: Optional[Tracer] = None,
    matrix: Optional[NodeChildMatrix] = None,
) -> list[StateVector]:
    """All minimal state vectors X with quickest single-path time <= T.

    The result is sorted lexicographically.  ``trace``, if given, is called
    with a :class:`TraceEvent` for every decision the search makes.
    """
    vectors = []
    for nodes, arcs, eta in _search(net, q, trace, matrix):
        x = [0] * net.m
        for i in arcs:
            x[i] = eta
        vectors.append(tuple(x))
    return sorted(set(vectors))


def find_feasible_paths(net: Network, q: Query) -> list[tuple[MinimalPath, int]]:
    """Minimal paths accepted by the search, with their required capacity, in traversal order."""
    return [(MinimalPath(nodes, arcs), eta) for nodes, arcs, eta in _search(net, q)]


def _search(net, q, trace=None, matrix=None):
    B = matrix if matrix is not None else build_node_child_matrix(net)
    n = net.node_count
    d, T = q.demand, q.time_budget
    st = SearchState.start(n)
    on_path = {1}

    def note(step, action, s, t, eta=None):
        if trace is not None:
            trace(TraceEvent(step, action, s, t, st.lt, st.kap, eta, tuple(st.path)))

    while True:
        s = st.path[-1]
        t = B.child(s, st.cursor[s])

        if t == 0:
            if s == 1:
                note(5, "stop", s, t)
                return
            if s == n:
                nodes = tuple(st.path)
                arcs = tuple(net.arc_between(a, b) for a, b in zip(nodes, nodes[1:]))
                note(5, "emit", s, t, st.etas[-1])
                yield nodes, arcs, st.etas[-1]
                if len(st.path) == 2:
                    # the sink is the last child of the source: nothing left
                    note(5, "stop", s, t)
                    return
                # the sink is also the last child of its parent, so drop both
                parent = st.path[-2]
                note(5, "backtrack", s, t)
                st.cursor[parent] = 1
                st.pop()
                st.pop()
                on_path.discard(s)
                on_path.discard(parent)
                continue
            note(6, "backtrack", s, t)
            st.cursor[s] = 1
            st.pop()
            on_path.discard(s)
            continue

        if t in on_path:
            note(7, "skip-repeat", s, t)
            st.cursor[s] += 1
            continue

        a = net.arc_between(s, t)
        lead = net.arcs[a].lead_time
        cap = net.arcs[a].max_capacity
        st.cursor[s] += 1
        if st.lt + lead >= T:
            note(8, "prune-lead", s, t)
            continue
        eta = ceil_div(d, T - st.lt - lead)
        if eta > min(st.kap, cap):
            note(8, "prune-capacity", s, t, eta)
            continue
        note(8, "extend", s, t, eta)
        st.push(t, lead, cap, eta)
        on_path.add(t)


def enumerate_all_mps(net: Network, matrix: Optional[NodeChildMatrix] = None) -> list[MinimalPath]:
    """Every simple source-to-sink path, in node-child matrix traversal order."""
    B = matrix if matrix is not None else build_node_child_matrix(net)
    sink = net.node_count
    found = []

    def visit(path, arcs):
        s = path[-1]
        if s == sink:
            found.append(MinimalPath(tuple(path), tuple(arcs)))
            return
        for t in B.children(s):
            if t in path:
                continue
            path.append(t)
            arcs.append(net.arc_between(s, t))
            visit(path, arcs)
            path.pop()
            arcs.pop()

    visit([1], [])
    return found
