"""Existence of a fair flow under infinite bounds, and bound finitization.

With infinite bounds on focus edges a dec-min flow may not exist: focus
values can be pushed down forever along certain circuits.  The
unboundedness directions form a digraph: every edge with lower bound
-inf kept forwards, every non-focus edge with upper bound +inf added
reversed.  A di-circuit of that digraph meeting the focus set is
exactly a recipe for improving any feasible flow indefinitely, so a
fair flow exists iff no such circuit does.

When one exists the circuit is returned as a witness; when none does,
the bounds can be made finite on the focus set without changing the set
of fair flows, after which the finite-bound machinery applies.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import FlowProblem, FlowValues, boundary_sums, supply_sum
from .errors import InternalCertificateFailure, NoDecMinError
from .extint import ext_min
from .maxflow import require_feasible


@dataclass(frozen=True)
class InfArc:
    """One unboundedness direction.

    Forward arcs come from edges whose lower bound is -inf (their value
    can always drop); reversed arcs from non-focus edges whose upper
    bound is +inf (their value can always grow).
    """

    tail: int
    head: int
    origin: int
    reversed_: bool


@dataclass(frozen=True)
class ExistenceResult:
    exists: bool
    witness: tuple[InfArc, ...] | None

    def __bool__(self) -> bool:
        return self.exists


def infinity_digraph(problem: FlowProblem) -> tuple[InfArc, ...]:
    arcs: list[InfArc] = []
    for e, (u, v) in enumerate(problem.graph.edges):
        if not problem.lower[e].is_finite:
            arcs.append(InfArc(u, v, e, False))
        if e not in problem.focus and not problem.upper[e].is_finite:
            arcs.append(InfArc(v, u, e, True))
    return tuple(arcs)


def _strongly_connected_components(node_count: int, arcs: tuple[InfArc, ...]) -> list[int]:
    """Component id per node (Kosaraju, iterative)."""
    out: list[list[int]] = [[] for _ in range(node_count)]
    rev: list[list[int]] = [[] for _ in range(node_count)]
    for arc in arcs:
        out[arc.tail].append(arc.head)
        rev[arc.head].append(arc.tail)
    order: list[int] = []
    seen = [False] * node_count
    for root in range(node_count):
        if seen[root]:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        seen[root] = True
        while stack:
            node, i = stack.pop()
            if i < len(out[node]):
                stack.append((node, i + 1))
                nxt = out[node][i]
                if not seen[nxt]:
                    seen[nxt] = True
                    stack.append((nxt, 0))
            else:
                order.append(node)
    comp = [-1] * node_count
    label = 0
    for root in reversed(order):
        if comp[root] != -1:
            continue
        stack2 = [root]
        comp[root] = label
        while stack2:
            node = stack2.pop()
            for nxt in rev[node]:
                if comp[nxt] == -1:
                    comp[nxt] = label
                    stack2.append(nxt)
        label += 1
    return comp


def _path(arcs: tuple[InfArc, ...], start: int, goal: int) -> list[InfArc]:
    """Shortest arc path start -> goal (possibly empty when equal)."""
    if start == goal:
        return []
    prev: dict[int, InfArc] = {}
    queue = [start]
    seen = {start}
    while queue:
        node = queue.pop(0)
        for arc in arcs:
            if arc.tail == node and arc.head not in seen:
                seen.add(arc.head)
                prev[arc.head] = arc
                if arc.head == goal:
                    queue.clear()
                    break
                queue.append(arc.head)
    if goal not in prev:
        raise ValueError("no path; nodes are not in one component")
    path = []
    node = goal
    while node != start:
        arc = prev[node]
        path.append(arc)
        node = arc.tail
    path.reverse()
    return path


def exists_decmin(problem: FlowProblem) -> ExistenceResult:
    """Decide whether a fair (dec-min) flow exists.

    Looks for a di-circuit of the unboundedness digraph through a focus
    edge: the focus edges that can appear on one are exactly the
    forward arcs with focus origin, so it suffices to test whether such
    an arc has both endpoints in one strongly connected component.  The
    witness closes the first qualifying arc (in edge-id order) with a
    shortest return path.
    """
    arcs = infinity_digraph(problem)
    comp = _strongly_connected_components(problem.node_count, arcs)
    for arc in arcs:
        if arc.reversed_ or arc.origin not in problem.focus:
            continue
        if comp[arc.tail] == comp[arc.head]:
            circuit = (arc, *_path(arcs, arc.head, arc.tail))
            return ExistenceResult(False, circuit)
    return ExistenceResult(True, None)


def shift_along_witness(values, circuit: tuple[InfArc, ...]) -> FlowValues:
    """Push one unit along a witness circuit: feasible and fairer, forever."""
    shifted = list(values)
    for arc in circuit:
        shifted[arc.origin] += 1 if arc.reversed_ else -1
    return tuple(shifted)


def finitize_bounds(problem: FlowProblem) -> FlowProblem:
    """Equivalent problem with finite bounds on the focus set.

    The set of fair flows is preserved exactly.  Upper bounds on focus
    edges are capped at the largest component of any one feasible flow;
    each -inf focus lower bound is replaced by the implied finite bound
    read off the unboundedness-digraph reachable set of its head.
    Identity when the focus bounds are already finite.

    Requires a fair flow to exist (NoDecMinError otherwise) and a
    feasible problem (InfeasibleError propagates).
    """
    if problem.finite_on_focus():
        return problem
    result = exists_decmin(problem)
    if not result.exists:
        raise NoDecMinError(witness=result.witness)
    sample = require_feasible(problem)

    upper = list(problem.upper)
    if any(not problem.upper[e].is_finite for e in problem.focus):
        cap = max(sample)
        for e in sorted(problem.focus):
            upper[e] = ext_min(problem.upper[e], cap)
    capped = problem.with_bounds(upper=upper)

    arcs = infinity_digraph(problem)
    reach_cache: dict[int, frozenset[int]] = {}

    def reachable_from(start: int) -> frozenset[int]:
        if start not in reach_cache:
            seen = {start}
            queue = [start]
            while queue:
                node = queue.pop(0)
                for arc in arcs:
                    if arc.tail == node and arc.head not in seen:
                        seen.add(arc.head)
                        queue.append(arc.head)
            reach_cache[start] = frozenset(seen)
        return reach_cache[start]

    lower = list(problem.lower)
    for e in sorted(problem.focus):
        if problem.lower[e].is_finite:
            continue
        tail, head = problem.graph.edges[e]
        region = reachable_from(head)
        if tail in region:
            raise InternalCertificateFailure(
                f"edge {e} closes an unboundedness circuit missed by the existence test"
            )
        in_up, _ = boundary_sums(capped, upper, region)
        _, out_lo = boundary_sums(capped, lower, region)
        implied = supply_sum(problem, region) - (in_up - upper[e]) + out_lo
        if not implied.is_finite or implied > upper[e]:
            raise InternalCertificateFailure(
                f"implied bound {implied} on edge {e} is not usable"
            )
        lower[e] = implied
    return problem.with_bounds(lower=lower, upper=upper)
