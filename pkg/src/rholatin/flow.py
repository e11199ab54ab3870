"""Integer maximum flow (Dinic) and feasible circulations with lower bounds.

Adjacency lists keep insertion order and the blocking-flow DFS always scans them from
the front, so flows are reproducible for a fixed construction order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass


class FlowNetwork:
    def __init__(self):
        self.labels: list = []
        self._index: dict = {}
        self.adj: list[list[int]] = []
        # edge arrays; edge e and e ^ 1 are a forward/backward pair
        self.to: list[int] = []
        self.cap: list[int] = []

    def node(self, label) -> int:
        """Id of ``label``, creating the node on first use."""
        idx = self._index.get(label)
        if idx is None:
            idx = len(self.labels)
            self._index[label] = idx
            self.labels.append(label)
            self.adj.append([])
        return idx

    def has_node(self, label) -> bool:
        return label in self._index

    def add_edge(self, u: int, v: int, cap: int) -> int:
        e = len(self.to)
        self.to += [v, u]
        self.cap += [cap, 0]
        self.adj[u].append(e)
        self.adj[v].append(e + 1)
        return e

    def flow_on(self, e: int) -> int:
        return self.cap[e ^ 1]

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * len(self.labels)
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.adj[u]:
                v = self.to[e]
                if self.cap[e] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def _push(self, u: int, t: int, limit: int, level: list[int], it: list[int]) -> int:
        if u == t:
            return limit
        adj = self.adj[u]
        while it[u] < len(adj):
            e = adj[it[u]]
            v = self.to[e]
            if self.cap[e] > 0 and level[v] == level[u] + 1:
                got = self._push(v, t, min(limit, self.cap[e]), level, it)
                if got:
                    self.cap[e] -= got
                    self.cap[e ^ 1] += got
                    return got
            it[u] += 1
        return 0

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            it = [0] * len(self.labels)
            while True:
                pushed = self._push(s, t, 1 << 62, level, it)
                if not pushed:
                    break
                total += pushed

    def reachable(self, s: int) -> set[int]:
        """Nodes reachable from ``s`` in the residual graph (the source side of a min cut)."""
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.adj[u]:
                v = self.to[e]
                if self.cap[e] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


@dataclass(frozen=True)
class BoundedEdge:
    tail: object
    head: object
    lower: int
    upper: int | None  # None: unbounded


@dataclass
class CirculationResult:
    feasible: bool
    flows: list[int] | None  # per edge, when feasible
    cut: frozenset | None  # node labels of a violating set, when infeasible
    lower_in: int = 0
    upper_out: int = 0


class Circulation:
    """Circulation with lower/upper edge bounds.

    Feasibility is decided by the usual reduction: each lower bound is pre-routed, the
    resulting node imbalances are attached to a super source/sink, and a max flow must
    saturate them. When infeasible, the residual-reachable set ``S`` (original nodes
    only) satisfies ``sum lower(into S) > sum upper(out of S)``; that set is reported.
    """

    def __init__(self):
        self.nodes: list = []
        self._seen: set = set()
        self.edges: list[BoundedEdge] = []

    def add_node(self, label) -> None:
        if label not in self._seen:
            self._seen.add(label)
            self.nodes.append(label)

    def add_edge(self, tail, head, lower: int = 0, upper: int | None = None) -> int:
        if upper is not None and lower > upper:
            raise ValueError(f"edge {tail}->{head}: lower {lower} > upper {upper}")
        if lower < 0:
            raise ValueError(f"edge {tail}->{head}: negative lower bound {lower}")
        self.add_node(tail)
        self.add_node(head)
        self.edges.append(BoundedEdge(tail, head, lower, upper))
        return len(self.edges) - 1

    def cut_values(self, S) -> tuple[int, int]:
        """(sum of lower bounds entering S, sum of upper bounds leaving S); None uppers count as huge."""
        lower_in = upper_out = 0
        for ed in self.edges:
            t_in, h_in = ed.tail in S, ed.head in S
            if h_in and not t_in:
                lower_in += ed.lower
            elif t_in and not h_in:
                upper_out += self._infinity() if ed.upper is None else ed.upper
        return lower_in, upper_out

    def _infinity(self) -> int:
        return 1 + sum(ed.upper if ed.upper is not None else ed.lower for ed in self.edges)

    def solve(self, maximize: tuple | None = None) -> CirculationResult:
        """Find a feasible circulation.

        With ``maximize=(s, t)`` the network is read as an s-t flow with bounds: an
        unbounded return edge t -> s is added, and once feasible the s-t value is
        pushed to its maximum.
        """
        if maximize is not None:
            s_label, t_label = maximize
            self.add_edge(t_label, s_label, 0, None)
            try:
                return self._solve(maximize)
            finally:
                self.edges.pop()
        return self._solve(None)

    def _solve(self, maximize) -> CirculationResult:
        inf = self._infinity()
        net = FlowNetwork()
        for label in self.nodes:
            net.node(("node", label))
        src = net.node(("super", "source"))
        snk = net.node(("super", "sink"))
        excess = {label: 0 for label in self.nodes}
        handles = []
        for ed in self.edges:
            cap = (inf if ed.upper is None else ed.upper) - ed.lower
            handles.append(net.add_edge(net.node(("node", ed.tail)), net.node(("node", ed.head)), cap))
            excess[ed.head] += ed.lower
            excess[ed.tail] -= ed.lower
        demand = 0
        for label in self.nodes:
            x = excess[label]
            if x > 0:
                net.add_edge(src, net.node(("node", label)), x)
                demand += x
            elif x < 0:
                net.add_edge(net.node(("node", label)), snk, -x)
        got = net.max_flow(src, snk)
        if got == demand:
            if maximize is not None:
                ret = handles[-1]
                net.cap[ret] = net.cap[ret ^ 1] = 0
                net.max_flow(net.node(("node", maximize[0])), net.node(("node", maximize[1])))
                handles = handles[:-1]
            flows = [ed.lower + net.flow_on(h) for ed, h in zip(self.edges, handles)]
            if maximize is not None:
                flows.append(None)
            return CirculationResult(True, flows, None)
        reach = net.reachable(src)
        S = frozenset(net.labels[v][1] for v in reach if net.labels[v][0] == "node")
        lower_in, upper_out = self.cut_values(S)
        assert lower_in > upper_out, "residual cut does not witness infeasibility"
        return CirculationResult(False, None, S, lower_in, upper_out)
