"""Max-flow primitive, Hoffman feasibility, and the parametric cut subroutine.

The engine is plain shortest-augmenting-path (BFS) max flow.  On top of
it sit three reductions:

* find_feasible_mflow: find an integral feasible flow for a bounded
  modular-flow problem, or a node set certifying infeasibility.
* most_violating_set: the node set maximizing the Hoffman deficiency
  supply(Z) - in_upper(Z) + out_lower(Z), feasible or not.
* nd_cut_subroutine: minimize mu*in_L(Z) + in_g'(Z) - out_f(Z) - supply(Z)
  over node sets, the oracle the ratio-maximization driver needs.

All three return deterministic answers: the cut side is always the
source-reachable set of the final residual network.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Digraph, FlowProblem, FlowValues, boundary_sums, supply_sum
from .errors import InfeasibleError
from .extint import ExtInt, POS_INF, as_extint, ext_min


@dataclass(frozen=True)
class CutCertificate:
    """A node set with its Hoffman deficiency.

    deficiency = supply(Z) - in_upper(Z) + out_lower(Z); positive values
    certify that no feasible flow exists.
    """

    nodes: frozenset[int]
    deficiency: int


def hoffman_deficiency(problem: FlowProblem, nodes: Iterable[int]) -> ExtInt:
    """supply(Z) - in_upper(Z) + out_lower(Z) for a node set Z."""
    nodes = set(nodes)
    in_upper, _ = boundary_sums(problem, problem.upper, nodes)
    _, out_lower = boundary_sums(problem, problem.lower, nodes)
    return as_extint(supply_sum(problem, nodes)) - in_upper + out_lower


class _Residual:
    """Mutable residual network for augmenting-path search.

    Arcs are stored in pairs: arc i and its reverse i^1.  Residual
    capacities are ExtInt so +inf arcs need no special casing.
    """

    def __init__(self, node_count: int):
        self.node_count = node_count
        self.head: list[int] = []
        self.res: list[ExtInt] = []
        self.adj: list[list[int]] = [[] for _ in range(node_count)]

    def add_arc(self, tail: int, head: int, capacity) -> int:
        """Add arc with the given capacity plus a zero-capacity reverse."""
        aid = len(self.head)
        self.head.append(head)
        self.res.append(as_extint(capacity))
        self.adj[tail].append(aid)
        self.head.append(tail)
        self.res.append(as_extint(0))
        self.adj[head].append(aid + 1)
        return aid

    def pushed(self, aid: int) -> int:
        """Net flow pushed through arc aid (reverse residual)."""
        return self.res[aid ^ 1].finite

    def reachable(self, source: int) -> set[int]:
        seen = {source}
        queue = [source]
        while queue:
            u = queue.pop(0)
            for aid in self.adj[u]:
                v = self.head[aid]
                if v not in seen and self.res[aid] > 0:
                    seen.add(v)
                    queue.append(v)
        return seen

    def _augmenting_path(self, source: int, sink: int) -> list[int] | None:
        """Shortest residual path as a list of arc ids, or None."""
        prev: dict[int, int] = {source: -1}
        queue = [source]
        while queue:
            u = queue.pop(0)
            if u == sink:
                break
            for aid in self.adj[u]:
                v = self.head[aid]
                if v not in prev and self.res[aid] > 0:
                    prev[v] = aid
                    queue.append(v)
        if sink not in prev:
            return None
        path = []
        v = sink
        while v != source:
            aid = prev[v]
            path.append(aid)
            v = self.head[aid ^ 1]
        path.reverse()
        return path

    def max_flow(self, source: int, sink: int) -> tuple[ExtInt, set[int]]:
        """Run augmenting paths to exhaustion; return (value, reachable set).

        A path whose bottleneck is +inf means the value is unbounded;
        the current reachable set (containing the sink) is returned
        with value +inf.
        """
        total = as_extint(0)
        while True:
            path = self._augmenting_path(source, sink)
            if path is None:
                return total, self.reachable(source)
            bottleneck: ExtInt = self.res[path[0]]
            for aid in path[1:]:
                bottleneck = ext_min(bottleneck, self.res[aid])
            if bottleneck == POS_INF:
                return POS_INF, self.reachable(source)
            delta = bottleneck.finite
            for aid in path:
                self.res[aid] = self.res[aid] - delta
                self.res[aid ^ 1] = self.res[aid ^ 1] + delta
            total = total + delta


def max_flow(
    graph: Digraph, capacities: Sequence, source: int, sink: int
) -> tuple[ExtInt, FlowValues, frozenset[int]]:
    """Integral max flow from source to sink under edge capacities.

    Capacities may be ints or ExtInt (+inf allowed) and must be >= 0.
    Returns (value, flow per edge, min-cut source side).  The cut is the
    source-reachable set of the final residual network; its capacity
    equals the flow value.  When an all-infinite augmenting path exists
    the value is +inf and the flow is whatever was pushed before
    detection.
    """
    if source == sink:
        raise ValueError("source and sink must differ")
    net = _Residual(graph.node_count)
    arc_of_edge = []
    for e, (u, v) in enumerate(graph.edges):
        cap = as_extint(capacities[e])
        if cap < 0:
            raise ValueError(f"edge {e} has negative capacity {cap}")
        arc_of_edge.append(net.add_arc(u, v, cap))
    value, reach = net.max_flow(source, sink)
    flow = tuple(net.pushed(aid) for aid in arc_of_edge)
    return value, flow, frozenset(reach)


# -- Hoffman feasibility -------------------------------------------------


def _base_point(problem: FlowProblem, e: int) -> int:
    """A finite value inside [lower, upper] of edge e."""
    lo, hi = problem.lower[e], problem.upper[e]
    if lo.is_finite:
        return lo.finite
    if hi.is_finite:
        return min(0, hi.finite)
    return 0


def _feasibility_network(problem: FlowProblem):
    """Super-source/super-sink network whose max flow decides feasibility.

    Returns (net, source, sink, demand_total, base, edge_arcs) where
    edge_arcs[e] = (forward arc id, backward arc id).
    """
    n = problem.node_count
    source, sink = n, n + 1
    net = _Residual(n + 2)
    base = [_base_point(problem, e) for e in range(problem.edge_count)]
    edge_arcs = []
    residual_supply = list(problem.supply)
    for e, (u, v) in enumerate(problem.graph.edges):
        residual_supply[v] -= base[e]
        residual_supply[u] += base[e]
        fwd = net.add_arc(u, v, problem.upper[e] - base[e])
        bwd = net.add_arc(v, u, base[e] - problem.lower[e])
        edge_arcs.append((fwd, bwd))
    demand_total = 0
    for v in range(n):
        r = residual_supply[v]
        if r > 0:
            net.add_arc(v, sink, r)
            demand_total += r
        elif r < 0:
            net.add_arc(source, v, -r)
    return net, source, sink, demand_total, base, edge_arcs


def find_feasible_mflow(problem: FlowProblem) -> FlowValues | CutCertificate:
    """Find an integral feasible flow, or a positively violated node set.

    Exactly one of the two outcomes is returned: a flow passing
    check_flow, or a CutCertificate with deficiency > 0.
    """
    net, source, sink, demand_total, base, edge_arcs = _feasibility_network(problem)
    value, reach = net.max_flow(source, sink)
    if value == demand_total:
        return tuple(
            base[e] + net.pushed(fwd) - net.pushed(bwd)
            for e, (fwd, bwd) in enumerate(edge_arcs)
        )
    violating = frozenset(range(problem.node_count)) - reach
    deficiency = hoffman_deficiency(problem, violating)
    return CutCertificate(violating, deficiency.finite)


def most_violating_set(problem: FlowProblem) -> CutCertificate:
    """The node set maximizing the Hoffman deficiency.

    The maximum is always >= 0 (the empty set has deficiency 0); it is
    > 0 exactly when no feasible flow exists.  Ties are resolved by the
    complement of the source-reachable min-cut side.
    """
    net, source, sink, _, _, _ = _feasibility_network(problem)
    _, reach = net.max_flow(source, sink)
    nodes = frozenset(range(problem.node_count)) - reach
    deficiency = hoffman_deficiency(problem, nodes)
    return CutCertificate(nodes, deficiency.finite)


def require_feasible(problem: FlowProblem) -> FlowValues:
    """find_feasible_mflow, raising InfeasibleError on a certificate."""
    outcome = find_feasible_mflow(problem)
    if isinstance(outcome, CutCertificate):
        raise InfeasibleError(
            f"no feasible flow: set {sorted(outcome.nodes)} has "
            f"deficiency {outcome.deficiency}",
            certificate=outcome,
        )
    return outcome


# -- parametric cut subroutine --------------------------------------------


def nd_cut_subroutine(
    problem: FlowProblem,
    level_edges: Iterable[int],
    g_prime: Sequence,
    mu: int,
) -> tuple[frozenset[int], int]:
    """Minimize mu*in_L(Z) + in_g'(Z) - out_f(Z) - supply(Z) over node sets.

    Requires mu >= 0 and g' >= lower.  The empty set scores 0, so the
    minimum is always <= 0.  Infinite-capacity terms make the offending
    sets infinitely bad and are simply never selected.

    The objective is an s-t cut function in disguise: each edge
    contributes a capacitated arc plus node charges, and the node
    charges become source/sink arcs.  The returned set is the sink side
    of the minimum cut (complement of the source-reachable set).
    """
    if mu < 0:
        raise ValueError("mu must be non-negative")
    level = set(level_edges)
    n = problem.node_count
    source, sink = n, n + 1
    net = _Residual(n + 2)
    # charge[v] accumulates the linear node terms of the objective
    charge = [-s for s in problem.supply]
    for e, (u, v) in enumerate(problem.graph.edges):
        w = as_extint(g_prime[e]) + (mu if e in level else 0)
        lo = problem.lower[e]
        if as_extint(g_prime[e]) < lo:
            raise ValueError(f"g_prime must dominate lower (edge {e})")
        if lo.is_finite:
            net.add_arc(u, v, w - lo.finite)
            charge[v] += lo.finite
            charge[u] -= lo.finite
        elif w.is_finite:
            # lower = -inf: leaving Z is forbidden, entering costs w
            net.add_arc(v, u, POS_INF)
            charge[v] += w.finite
            charge[u] -= w.finite
        else:
            # lower = -inf and weight = +inf: crossing either way is forbidden
            net.add_arc(u, v, POS_INF)
            net.add_arc(v, u, POS_INF)
    shift = 0
    for v in range(n):
        if charge[v] > 0:
            net.add_arc(source, v, charge[v])
        elif charge[v] < 0:
            net.add_arc(v, sink, -charge[v])
            shift += -charge[v]
    value, reach = net.max_flow(source, sink)
    nodes = frozenset(range(n)) - reach
    return nodes, value.finite - shift
