"""Ceiling-based Newton iteration for the smallest feasible level cap.

Two layers: a generic driver that finds the smallest integer mu with
mu*b(X) >= p(X) for all X (the smallest "good" mu, equal to the maximum
of ceil(p(X)/b(X)) over sets with b(X) > 0), and on top of it the
computation of the smallest integer cap beta such that clamping the
focus edges' upper bounds at beta keeps the problem feasible.

The driver only needs an argmax oracle for p(X) - mu*b(X); here that
oracle is a single min-cut computation.  The iteration count is bounded
by the largest b-value: the tentative mu values strictly increase while
the b-values of the maximizers strictly decrease.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import FlowProblem, boundary_sums, supply_sum
from .errors import AssumptionViolatedError
from .extint import ExtInt, as_extint
from .maxflow import (
    CutCertificate,
    find_feasible_mflow,
    nd_cut_subroutine,
    require_feasible,
)

#: argmax oracle: mu -> (maximizer X of p(X) - mu*b(X), p(X), b(X))
ArgmaxOracle = Callable[[int], tuple[frozenset[int], int, int]]


@dataclass(frozen=True)
class NDIteration:
    """One probe of the driver: a bad mu and the set that witnesses it."""

    mu: int
    argmax: frozenset[int]
    p_value: int
    b_value: int


@dataclass(frozen=True)
class NDTrace:
    """Full iteration record; mu strictly increases, b strictly decreases."""

    iterations: tuple[NDIteration, ...]
    mu_min: int


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def nd_min_good_mu(oracle: ArgmaxOracle, m_bound: int) -> tuple[int, NDTrace]:
    """Smallest integer mu >= 0 with p(X) - mu*b(X) <= 0 for all X.

    Standing assumptions, checked as they surface: p(X) <= 0 whenever
    b(X) = 0 (otherwise no good mu exists), and some set has p > 0
    (otherwise mu = 0 is already good).  Violations raise
    AssumptionViolatedError.

    m_bound caps the iteration count (any upper bound on max b works);
    exceeding it means the oracle is not a true argmax.
    """
    x, p, b = oracle(0)
    if p <= 0:
        raise AssumptionViolatedError("mu = 0 is already good")
    if b == 0:
        raise AssumptionViolatedError("no good mu exists: p > 0 on a set with b = 0")
    iterations = [NDIteration(0, x, p, b)]
    while True:
        prev = iterations[-1]
        mu = _ceil_div(prev.p_value, prev.b_value)
        x, p, b = oracle(mu)
        if p - mu * b <= 0:
            return mu, NDTrace(tuple(iterations), mu)
        if b == 0:
            raise AssumptionViolatedError(
                "no good mu exists: p > 0 on a set with b = 0"
            )
        iterations.append(NDIteration(mu, x, p, b))
        if len(iterations) > m_bound:
            raise AssumptionViolatedError(
                f"iteration bound {m_bound} exceeded; argmax oracle is inconsistent"
            )


@dataclass(frozen=True)
class BetaResult:
    """Outcome of the smallest-cap computation.

    beta is the smallest integer cap keeping feasibility; clamped_upper
    is the upper-bound vector after capping; saturated_level_set holds
    the focus edges now sitting exactly at beta; removed_tight_edges
    lists focus edges that became fixed (lower == upper) on the way and
    left the focus set.  beta is None only when every focus edge became
    tight, leaving nothing to cap.
    """

    beta: int | None
    clamped_upper: tuple[ExtInt, ...]
    saturated_level_set: frozenset[int]
    removed_tight_edges: tuple[int, ...]
    nd_trace: NDTrace | None


def compute_beta(problem: FlowProblem) -> BetaResult:
    """Smallest cap beta so that upper := min(upper, beta) on the focus
    set keeps the problem feasible.

    Requires finite bounds on the focus set and a feasible problem
    (InfeasibleError otherwise).  Works by cascading the top bound
    value downwards: while the top level can drop to the next candidate
    level max(top lower bound, second upper value) feasibly, clamp and
    continue (newly tight edges leave the focus set); when the drop
    fails, the exact cap is recovered by the Newton driver over min-cut
    probes.
    """
    if not problem.finite_on_focus():
        raise ValueError("compute_beta requires finite bounds on the focus set")
    require_feasible(problem)
    lower = problem.lower
    upper = list(problem.upper)
    focus = set(problem.focus)
    removed: list[int] = []

    def strip_tight() -> None:
        for e in sorted(focus):
            if lower[e] == upper[e]:
                focus.discard(e)
                removed.append(e)

    strip_tight()
    while focus:
        g_values = sorted({upper[e].finite for e in focus}, reverse=True)
        top = g_values[0]
        f_top = max(lower[e].finite for e in focus)
        level = sorted(e for e in focus if upper[e].finite == top)
        beta1 = max(f_top, g_values[1]) if len(g_values) > 1 else f_top
        dropped = list(upper)
        for e in level:
            dropped[e] = as_extint(beta1)
        trial = problem.with_bounds(upper=dropped)
        if not isinstance(find_feasible_mflow(trial), CutCertificate):
            upper = dropped
            strip_tight()
            continue

        # The drop is infeasible: find the smallest good raise mu over the
        # dropped bounds; beta = beta1 + mu.
        g_prime = tuple(dropped)
        level_set = frozenset(level)

        def oracle(mu: int) -> tuple[frozenset[int], int, int]:
            nodes, _ = nd_cut_subroutine(problem, level_set, g_prime, mu)
            in_gp, _ = boundary_sums(problem, g_prime, nodes)
            _, out_f = boundary_sums(problem, lower, nodes)
            p = (as_extint(supply_sum(problem, nodes)) - in_gp + out_f).finite
            b = sum(1 for e in problem.graph.entering(nodes) if e in level_set)
            return nodes, p, b

        mu_min, trace = nd_min_good_mu(oracle, m_bound=problem.edge_count)
        beta = beta1 + mu_min
        for e in level:
            upper[e] = as_extint(beta)
        return BetaResult(
            beta, tuple(upper), level_set, tuple(removed), trace
        )
    return BetaResult(None, tuple(upper), frozenset(), tuple(removed), None)
