"""Flows saturating as few designated edges as possible, with dual chains.

Given a subset L of edges with finite, non-tight bounds, find a feasible
flow minimizing the number of L-edges sitting at their upper bound,
together with a nested chain of node sets certifying the minimum:

    min #saturated = in_L(chain) - sum(in_upper(Vi) - out_lower(Vi) - supply(Vi))

The construction adds a unit-capacity parallel copy of every L-edge,
lowers the original's upper bound by one, prices copies at one and
everything else at zero, and solves a min-cost flow.  The copy flow
counts the saturated edges; shortest-path potentials of the optimal
residual, compressed to consecutive integer levels, cut out the chain.

Every output is verified against the five saturation criteria (O1)-(O5)
before being returned; a failure raises InternalCertificateFailure and
always indicates a bug, never a property of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Digraph, FlowProblem, FlowValues, boundary_sums, supply_sum
from .errors import InternalCertificateFailure
from .extint import NEG_INF, POS_INF, as_extint
from .maxflow import require_feasible
from .mincost import build_costed_residual, min_cost_mflow, residual_potentials


@dataclass(frozen=True)
class Chain:
    """Strictly nested node sets V1 > V2 > ... > Vq (possibly none)."""

    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        for i, s in enumerate(self.sets):
            if not s:
                raise ValueError("chain members must be non-empty")
            if i > 0 and not s < self.sets[i - 1]:
                raise ValueError("chain members must be strictly nested")

    def __len__(self) -> int:
        return len(self.sets)

    def entered_count(self, tail: int, head: int) -> int:
        """How many members the arc (tail, head) enters."""
        return sum(1 for s in self.sets if head in s and tail not in s)

    def leaves_any(self, tail: int, head: int) -> bool:
        return any(tail in s and head not in s for s in self.sets)


@dataclass(frozen=True)
class ParallelCopyProblem:
    """The unit-copy construction for counting saturated edges.

    extended is the base problem plus one parallel copy per L-edge:
    originals keep their lower bound and get upper-1 on L, copies are
    [0, 1] edges costing 1 while everything else costs 0.  copy_pairs
    maps each L-edge id to its copy's edge id in the extended graph.
    """

    base: FlowProblem
    level_edges: frozenset[int]
    extended: FlowProblem
    copy_pairs: tuple[tuple[int, int], ...]

    def pull_back(self, extended_values: Sequence[int]) -> FlowValues:
        """Fold copy flow back onto the originals."""
        values = list(extended_values[: self.base.edge_count])
        for orig, copy in self.copy_pairs:
            values[orig] += extended_values[copy]
        return tuple(values)


def build_parallel_copy(problem: FlowProblem, level_edges: Iterable[int]) -> ParallelCopyProblem:
    level = frozenset(level_edges)
    for e in sorted(level):
        if not (problem.lower[e].is_finite and problem.upper[e].is_finite):
            raise ValueError(f"edge {e} needs finite bounds to be counted")
        if problem.lower[e] == problem.upper[e]:
            raise ValueError(f"edge {e} is tight; remove it from the count set")
    edges = list(problem.graph.edges)
    lower = list(problem.lower)
    upper = [
        problem.upper[e] - 1 if e in level else problem.upper[e]
        for e in range(problem.edge_count)
    ]
    cost = [0] * problem.edge_count
    pairs = []
    for e in sorted(level):
        copy_id = len(edges)
        edges.append(problem.graph.edges[e])
        lower.append(as_extint(0))
        upper.append(as_extint(1))
        cost.append(1)
        pairs.append((e, copy_id))
    extended = FlowProblem(
        graph=Digraph(problem.node_count, tuple(edges)),
        lower=tuple(lower),
        upper=tuple(upper),
        supply=problem.supply,
        focus=frozenset(),
        cost=tuple(cost),
    )
    return ParallelCopyProblem(problem, level, extended, tuple(pairs))


# -- dual extraction -------------------------------------------------------


def _compress_levels(values: Sequence[int]) -> list[int]:
    """Monotone map onto 0..q keeping the distinct-value structure."""
    rank = {v: i for i, v in enumerate(sorted(set(values)))}
    return [rank[v] for v in values]


def _slackness_holds(extended: FlowProblem, values: Sequence[int], y: Sequence[int]) -> bool:
    """Complementary slackness of (values, y) for the extended program."""
    cost = extended.cost or (0,) * extended.edge_count
    for e, (u, v) in enumerate(extended.graph.edges):
        dy = y[v] - y[u]
        if dy < cost[e] and values[e] != extended.lower[e]:
            return False
        if dy > cost[e] and values[e] != extended.upper[e]:
            return False
    return True


def extract_chain_from_duals(
    pcp: ParallelCopyProblem, extended_values: Sequence[int]
) -> Chain:
    """Optimal dual chain from the residual of an optimal extended flow.

    Potentials are shortest distances in the costed residual (raises
    NegativeCycleError when the flow is not optimal).  The orientation
    whose complementary slackness holds is kept, levels are compressed
    to consecutive integers with minimum zero, and the chain collects
    the upper level sets of every positive level.  An all-zero
    potential yields the empty chain.
    """
    residual = build_costed_residual(pcp.extended, extended_values)
    potentials = residual_potentials(residual)
    for oriented in (potentials, [-p for p in potentials]):
        y = _compress_levels(oriented)
        if _slackness_holds(pcp.extended, extended_values, y):
            top = max(y)
            return Chain(
                tuple(
                    frozenset(v for v in range(pcp.base.node_count) if y[v] >= i)
                    for i in range(1, top + 1)
                )
            )
    raise InternalCertificateFailure(
        "no orientation of the residual potentials satisfies complementary slackness"
    )


# -- optimality criteria ----------------------------------------------------


def verify_O1_O5(
    problem: FlowProblem,
    level_edges: Iterable[int],
    values: Sequence[int],
    chain: Chain,
) -> list[str]:
    """Check the five saturation-optimality criteria; empty list means pass.

    (O1) edges leaving any chain member sit at their lower bound;
    (O2) non-counted edges entering a member sit at their upper bound;
    (O3) counted edges entering exactly one member are within one of it;
    (O4) counted edges entering two or more members sit at it;
    (O5) counted edges not crossing the chain stay strictly below it.
    """
    level = frozenset(level_edges)
    violations: list[str] = []
    for e, (u, v) in enumerate(problem.graph.edges):
        entered = chain.entered_count(u, v)
        leaves = chain.leaves_any(u, v)
        z = values[e]
        lo, hi = problem.lower[e], problem.upper[e]
        if leaves and z != lo:
            violations.append(f"O1: edge {e} leaves a chain member but {z} != {lo}")
        if e not in level:
            if entered >= 1 and z != hi:
                violations.append(f"O2: edge {e} enters a member but {z} != {hi}")
            continue
        if entered == 1 and not (hi - 1 <= z <= hi):
            violations.append(f"O3: edge {e} enters one member but {z} not in [{hi - 1}, {hi}]")
        if entered >= 2 and z != hi:
            violations.append(f"O4: edge {e} enters {entered} members but {z} != {hi}")
        if entered == 0 and not leaves and not (lo <= z <= hi - 1):
            violations.append(f"O5: edge {e} avoids the chain but {z} not in [{lo}, {hi - 1}]")
    return violations


def chain_dual_value(
    problem: FlowProblem, level_edges: Iterable[int], chain: Chain
) -> int:
    """Dual objective: entered L-edges minus the chain's slack terms."""
    level = frozenset(level_edges)
    entered = sum(
        1
        for e in level
        if chain.entered_count(*problem.graph.edges[e]) >= 1
    )
    slack = 0
    for member in chain.sets:
        in_up, _ = boundary_sums(problem, problem.upper, member)
        _, out_lo = boundary_sums(problem, problem.lower, member)
        slack += (in_up - out_lo - supply_sum(problem, member)).finite
    return entered - slack


def solve_upper_minimizer(
    problem: FlowProblem, level_edges: Iterable[int]
) -> tuple[FlowValues, Chain, int]:
    """Feasible flow saturating as few ``level_edges`` as possible.

    Returns (flow, chain, saturated_count); the chain certifies the
    count through the criteria (O1)-(O5) and the min-max equality, both
    of which are re-verified before returning.  Raises InfeasibleError
    when the problem has no feasible flow at all.
    """
    level = frozenset(level_edges)
    if not level:
        return require_feasible(problem), Chain(()), 0
    pcp = build_parallel_copy(problem, level)
    extended_values = min_cost_mflow(pcp.extended)
    count = sum(extended_values[copy] for _, copy in pcp.copy_pairs)
    values = pcp.pull_back(extended_values)
    chain = extract_chain_from_duals(pcp, extended_values)
    problems = verify_O1_O5(problem, level, values, chain)
    if problems:
        raise InternalCertificateFailure(
            "saturation criteria failed: " + "; ".join(problems)
        )
    for member in chain.sets:
        if len(member) >= problem.node_count:
            raise InternalCertificateFailure("chain member is not a proper subset")
        in_up, _ = boundary_sums(problem, problem.upper, member)
        _, out_lo = boundary_sums(problem, problem.lower, member)
        if in_up == POS_INF or out_lo == NEG_INF:
            raise InternalCertificateFailure("chain member has an infinite boundary term")
    if chain_dual_value(problem, level, chain) != count:
        raise InternalCertificateFailure("dual chain value does not match count")
    return values, chain, count
