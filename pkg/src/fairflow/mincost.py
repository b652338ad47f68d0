"""Minimum-cost feasible flows by negative-cycle canceling.

A feasible flow is cost-minimal iff its costed residual digraph has no
negative di-circuit, and in that case shortest-path distances in the
residual give an integer potential certifying it.  The solver leans on
both directions: start from any feasible flow, cancel negative residual
cycles until none remain, then the potentials fall out for free.

Costs are restricted to integers so all arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ._bf import bellman_ford
from .core import FlowProblem, FlowValues
from .errors import NegativeCycleError, UnboundedCostError
from .extint import ExtInt, POS_INF, as_extint, ext_min
from .maxflow import require_feasible


@dataclass(frozen=True)
class ResidualArc:
    """A costed residual arc.

    Forward arcs (value below upper) carry the edge cost; backward arcs
    (value above lower) carry the negated cost.  Present iff capacity > 0.
    """

    tail: int
    head: int
    capacity: ExtInt
    cost: int
    origin: int
    forward: bool


@dataclass(frozen=True)
class CostedResidual:
    node_count: int
    arcs: tuple[ResidualArc, ...]


def build_costed_residual(
    problem: FlowProblem, values: Sequence[int], cost: Sequence[int] | None = None
) -> CostedResidual:
    """Residual digraph of a feasible flow with signed costs.

    Uses ``problem.cost`` when no explicit cost vector is given; absent
    both, costs are zero.
    """
    if cost is None:
        cost = problem.cost or (0,) * problem.edge_count
    arcs: list[ResidualArc] = []
    for e, (u, v) in enumerate(problem.graph.edges):
        up = problem.upper[e] - values[e]
        if up > 0:
            arcs.append(ResidualArc(u, v, up, cost[e], e, True))
        down = as_extint(values[e]) - problem.lower[e]
        if down > 0:
            arcs.append(ResidualArc(v, u, down, -cost[e], e, False))
    return CostedResidual(problem.node_count, tuple(arcs))


def _scalar_bf(residual: CostedResidual):
    return bellman_ford(
        residual.node_count,
        [a.tail for a in residual.arcs],
        [a.head for a in residual.arcs],
        [a.cost for a in residual.arcs],
        add=lambda d, w: d + w,
        zero=0,
    )


def find_negative_dicircuit(
    residual: CostedResidual,
) -> tuple[ResidualArc, ...] | None:
    """A di-circuit of negative total cost, or None if conservative."""
    _, cycle = _scalar_bf(residual)
    if cycle is None:
        return None
    return tuple(residual.arcs[i] for i in cycle)


def residual_potentials(residual: CostedResidual) -> list[int]:
    """Integer potentials with pi(head) - pi(tail) <= cost on every arc.

    Computed as shortest distances from a virtual root with zero-cost
    arcs to every node.  Raises NegativeCycleError when the residual is
    not conservative.
    """
    dist, cycle = _scalar_bf(residual)
    if cycle is not None:
        raise NegativeCycleError("residual digraph has a negative di-circuit")
    return dist


def min_cost_mflow(problem: FlowProblem) -> FlowValues:
    """Integral feasible flow minimizing total cost.

    Establishes any feasible flow, then cancels negative residual
    di-circuits (first one found in deterministic scan order) until the
    residual is conservative.

    Raises InfeasibleError when no feasible flow exists, and
    UnboundedCostError when the cost guard fails: every negative-cost
    edge needs a finite upper bound and every positive-cost edge a
    finite lower bound, otherwise the minimum may not exist.
    """
    cost = problem.cost or (0,) * problem.edge_count
    for e in range(problem.edge_count):
        if cost[e] < 0 and not problem.upper[e].is_finite:
            raise UnboundedCostError(
                f"edge {e} has negative cost and upper bound +inf"
            )
        if cost[e] > 0 and not problem.lower[e].is_finite:
            raise UnboundedCostError(
                f"edge {e} has positive cost and lower bound -inf"
            )
    values = list(require_feasible(problem))
    while True:
        residual = build_costed_residual(problem, values, cost)
        cycle = find_negative_dicircuit(residual)
        if cycle is None:
            return tuple(values)
        bottleneck: ExtInt = cycle[0].capacity
        for arc in cycle[1:]:
            bottleneck = ext_min(bottleneck, arc.capacity)
        if bottleneck == POS_INF:
            raise UnboundedCostError(
                "negative di-circuit with infinite residual capacity"
            )
        delta = bottleneck.finite
        for arc in cycle:
            values[arc.origin] += delta if arc.forward else -delta
