"""The narrow box of fair flows and the flows themselves.

The central result implemented here: the fair (dec-min) integral flows
of a bounded modular-flow problem are exactly the integral flows of a
tightened bound pair (f*, g*) whose width is at most one on every focus
edge.  The pair is produced by a reduction loop.  Each round:

1. drops tight focus edges (their value is forced anyway),
2. computes the smallest feasible cap beta for the focus uppers,
3. finds a flow saturating as few cap-level edges as possible together
   with its dual chain,
4. rewrites the bounds from the chain geometry; the cap-level edges
   entering the chain become width-<=-1 and leave the focus set.

The focus set strictly shrinks every round, so at most |focus| rounds
run.  Flows inside the final box are then ordinary feasibility /
min-cost queries: one for a fair flow, one for the cheapest fair flow,
and the increasing-maximal variant is the mirror image under negation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import FlowProblem, FlowValues
from .errors import InternalCertificateFailure
from .existence import finitize_bounds
from .extint import ExtInt, as_extint
from .maxflow import require_feasible
from .mincost import min_cost_mflow
from .newton import BetaResult, NDTrace, compute_beta
from .upper_min import Chain, solve_upper_minimizer


@dataclass(frozen=True)
class NarrowBox:
    """Tightened bounds characterizing all fair flows.

    Componentwise f <= f_star <= g_star <= g, with
    0 <= g_star - f_star <= 1 and both finite on every focus edge.
    """

    f_star: tuple[ExtInt, ...]
    g_star: tuple[ExtInt, ...]


@dataclass(frozen=True)
class ReductionRound:
    """One round of the tightening loop.

    A normal round carries the cap beta, the upper bounds right after
    capping (g_capped, the state the chain was computed against), the
    cap-level edge set, the dual chain, the rewritten bounds, the
    narrowed edges leaving the focus set, and the remaining focus.  A
    terminal round (beta None, no chain) occurs when cap cascading
    turned every remaining focus edge tight; only the bounds and
    removals are meaningful then.
    """

    beta: int | None
    g_capped: tuple[ExtInt, ...]
    level_set: frozenset[int]
    chain: Chain | None
    f_prime: tuple[ExtInt, ...]
    g_prime: tuple[ExtInt, ...]
    narrowed: frozenset[int]
    focus_next: frozenset[int]
    removed_tight: tuple[int, ...]
    nd_trace: NDTrace | None


def apply_round_bounds(
    problem: FlowProblem,
    beta: int,
    level_set: frozenset[int],
    chain: Chain,
) -> tuple[tuple[ExtInt, ...], tuple[ExtInt, ...], frozenset[int]]:
    """Rewrite bounds from the chain geometry.

    Cap-level edges: entering two or more chain members pins them at
    beta, entering exactly one narrows them to [beta-1, beta], leaving a
    member pins them at their lower bound, crossing nothing caps them at
    beta-1.  Other edges: entering pins at upper, leaving pins at lower,
    otherwise untouched.  Returns (f', g', narrowed) where narrowed
    holds the cap-level edges entering at least one member.
    """
    f_prime = list(problem.lower)
    g_prime = list(problem.upper)
    narrowed = set()
    for e, (u, v) in enumerate(problem.graph.edges):
        entered = chain.entered_count(u, v)
        leaves = chain.leaves_any(u, v)
        if e in level_set:
            assert problem.upper[e] == beta, "cap-level edge must sit at beta"
            if entered >= 2:
                f_prime[e] = g_prime[e] = as_extint(beta)
            elif entered == 1:
                f_prime[e] = as_extint(beta - 1)
            elif leaves:
                g_prime[e] = problem.lower[e]
            else:
                g_prime[e] = as_extint(beta - 1)
            if entered >= 1:
                narrowed.add(e)
        else:
            if entered >= 1:
                f_prime[e] = problem.upper[e]
            elif leaves:
                g_prime[e] = problem.lower[e]
    return tuple(f_prime), tuple(g_prime), frozenset(narrowed)


def narrow_box(problem: FlowProblem) -> tuple[NarrowBox, tuple[ReductionRound, ...]]:
    """Compute the narrow box (f*, g*) and the per-round trace.

    Infinite focus bounds are first made finite via the existence
    module (NoDecMinError when no fair flow exists).  Raises
    InfeasibleError when the problem has no feasible flow at all.
    """
    problem = finitize_bounds(problem)
    require_feasible(problem)
    lower = problem.lower
    upper = problem.upper
    focus = set(problem.focus)
    rounds: list[ReductionRound] = []
    while True:
        current = problem.with_bounds(lower, upper).with_focus(focus)
        pre_tight = current.tight_edges(within=focus)
        focus.difference_update(pre_tight)
        if not focus:
            if pre_tight:
                rounds.append(
                    ReductionRound(
                        beta=None,
                        g_capped=upper,
                        level_set=frozenset(),
                        chain=None,
                        f_prime=lower,
                        g_prime=upper,
                        narrowed=frozenset(),
                        focus_next=frozenset(),
                        removed_tight=tuple(pre_tight),
                        nd_trace=None,
                    )
                )
            break
        beta_result: BetaResult = compute_beta(
            current.with_focus(focus)
        )
        upper = beta_result.clamped_upper
        focus.difference_update(beta_result.removed_tight_edges)
        removed = tuple(pre_tight) + beta_result.removed_tight_edges
        if beta_result.beta is None:
            rounds.append(
                ReductionRound(
                    beta=None,
                    g_capped=upper,
                    level_set=frozenset(),
                    chain=None,
                    f_prime=lower,
                    g_prime=upper,
                    narrowed=frozenset(),
                    focus_next=frozenset(focus),
                    removed_tight=removed,
                    nd_trace=None,
                )
            )
            break
        clamped = problem.with_bounds(lower, upper).with_focus(focus)
        level_set = beta_result.saturated_level_set
        _, chain, count = solve_upper_minimizer(clamped, level_set)
        if count == 0:
            raise InternalCertificateFailure(
                "no flow reaches the cap even though the cap is minimal"
            )
        f_prime, g_prime, narrowed = apply_round_bounds(
            clamped, beta_result.beta, level_set, chain
        )
        if not narrowed:
            raise InternalCertificateFailure(
                "round narrowed no edge; the reduction would not terminate"
            )
        focus -= narrowed
        rounds.append(
            ReductionRound(
                beta=beta_result.beta,
                g_capped=upper,
                level_set=level_set,
                chain=chain,
                f_prime=f_prime,
                g_prime=g_prime,
                narrowed=narrowed,
                focus_next=frozenset(focus),
                removed_tight=removed,
                nd_trace=beta_result.nd_trace,
            )
        )
        lower, upper = f_prime, g_prime
    box = NarrowBox(lower, upper)
    for e in problem.focus:
        width = box.g_star[e] - box.f_star[e]
        if not (box.f_star[e].is_finite and 0 <= width <= 1):
            raise InternalCertificateFailure(
                f"box is not narrow on focus edge {e}: "
                f"[{box.f_star[e]}, {box.g_star[e]}]"
            )
    return box, tuple(rounds)


def decmin_flow(problem: FlowProblem) -> FlowValues:
    """A fair (decreasingly minimal on the focus set) integral flow."""
    box, _ = narrow_box(problem)
    return require_feasible(problem.with_bounds(box.f_star, box.g_star))


def cheapest_decmin_flow(problem: FlowProblem) -> FlowValues:
    """The cheapest fair flow under the problem's integer costs.

    Fair flows are exactly the flows of the narrow box, so this is a
    single min-cost query over the tightened bounds.
    """
    box, _ = narrow_box(problem)
    return min_cost_mflow(problem.with_bounds(box.f_star, box.g_star))


def incmax_flow(problem: FlowProblem) -> FlowValues:
    """An increasingly maximal flow: the mirror image of a fair flow.

    z is inc-max on the focus set exactly when -z is dec-min for the
    negated problem.
    """
    mirrored = decmin_flow(problem.negated())
    return tuple(-z for z in mirrored)
