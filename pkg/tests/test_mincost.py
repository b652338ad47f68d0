import random

import pytest

from fairflow import (
    CostedResidual,
    InfeasibleError,
    NegativeCycleError,
    ResidualArc,
    UnboundedCostError,
    build_costed_residual,
    check_flow,
    find_negative_dicircuit,
    min_cost_mflow,
    residual_potentials,
)
from fairflow.extint import ExtInt, POS_INF
from fairflow.oracle import enumerate_flows

from conftest import build, random_problem


def total_cost(problem, values):
    cost = problem.cost or (0,) * problem.edge_count
    return sum(c * z for c, z in zip(cost, values))


def arc(tail, head, cap, cost, origin=0, forward=True):
    return ResidualArc(tail, head, ExtInt(cap), cost, origin, forward)


class TestNegativeDicircuit:
    def test_empty(self):
        assert find_negative_dicircuit(CostedResidual(3, ())) is None

    def test_two_cycle(self):
        residual = CostedResidual(2, (arc(0, 1, 1, 1), arc(1, 0, 1, -2)))
        cycle = find_negative_dicircuit(residual)
        assert cycle is not None
        assert sum(a.cost for a in cycle) == -1

    def test_negative_self_loop(self):
        residual = CostedResidual(1, (arc(0, 0, 1, -1),))
        cycle = find_negative_dicircuit(residual)
        assert cycle is not None and len(cycle) == 1

    def test_detection_matches_exhaustive(self):
        # enumerate all simple cycles by DFS and compare the verdicts
        rng = random.Random(5)
        for _ in range(120):
            n = rng.randint(1, 4)
            m = rng.randint(1, 7)
            arcs = tuple(
                arc(rng.randrange(n), rng.randrange(n), 1, rng.randint(-3, 3), i)
                for i, m_ in enumerate(range(m))
            )
            residual = CostedResidual(n, arcs)
            found = find_negative_dicircuit(residual)
            exists = self._has_negative_cycle(n, arcs)
            assert (found is not None) == exists
            if found is not None:
                assert sum(a.cost for a in found) < 0
                # consecutive arcs chain head to tail and close up
                for first, second in zip(found, found[1:] + found[:1]):
                    assert first.head == second.tail

    @staticmethod
    def _has_negative_cycle(n, arcs):
        def search(path_nodes, node, weight, start):
            for a in arcs:
                if a.tail != node:
                    continue
                if a.head == start and weight + a.cost < 0:
                    return True
                if a.head not in path_nodes and a.head > start:
                    if search(path_nodes | {a.head}, a.head, weight + a.cost, start):
                        return True
            return False

        return any(search({s}, s, 0, s) for s in range(n))


class TestPotentials:
    def test_no_arcs(self):
        assert residual_potentials(CostedResidual(3, ())) == [0, 0, 0]

    def test_single_arc(self):
        residual = CostedResidual(2, (arc(0, 1, 1, 3),))
        assert residual_potentials(residual) == [0, 0]

    def test_raises_on_negative_cycle(self):
        residual = CostedResidual(2, (arc(0, 1, 1, 1), arc(1, 0, 1, -2)))
        with pytest.raises(NegativeCycleError):
            residual_potentials(residual)

    def test_feasibility_random(self):
        rng = random.Random(13)
        checked = 0
        while checked < 40:
            n = rng.randint(2, 5)
            arcs = tuple(
                arc(rng.randrange(n), rng.randrange(n), 1, rng.randint(-2, 4), i)
                for i in range(rng.randint(1, 8))
            )
            residual = CostedResidual(n, arcs)
            try:
                pi = residual_potentials(residual)
            except NegativeCycleError:
                continue
            for a in arcs:
                assert pi[a.head] - pi[a.tail] <= a.cost
            checked += 1


class TestMinCost:
    def test_zero_cost_returns_any_feasible(self, diamond):
        flow = min_cost_mflow(diamond)
        assert check_flow(diamond, flow) is None

    def test_diamond_avoids_priced_edge(self, diamond):
        import dataclasses

        priced = dataclasses.replace(diamond, cost=(1, 0, 0, 0))
        flow = min_cost_mflow(priced)
        assert flow == (0, 2, 0, 2)
        assert total_cost(priced, flow) == 0

    def test_infeasible(self):
        problem = build(2, [(0, 1)], [0], [1], [-2, 2], cost=[1])
        with pytest.raises(InfeasibleError):
            min_cost_mflow(problem)

    def test_unbounded_guard(self):
        problem = build(
            2, [(0, 1), (1, 0)], [0, 0], ["+inf", "+inf"], [0, 0], cost=[-1, 0]
        )
        with pytest.raises(UnboundedCostError):
            min_cost_mflow(problem)

    def test_optimal_residual_is_conservative(self):
        rng = random.Random(17)
        for _ in range(50):
            problem = random_problem(rng, feasible=True, costs=True)
            flow = min_cost_mflow(problem)
            assert check_flow(problem, flow) is None
            residual = build_costed_residual(problem, flow)
            assert find_negative_dicircuit(residual) is None

    def test_cost_matches_enumeration(self):
        rng = random.Random(37)
        for _ in range(40):
            problem = random_problem(
                rng, max_nodes=4, max_edges=6, feasible=True, costs=True
            )
            flow = min_cost_mflow(problem)
            best = min(total_cost(problem, z) for z in enumerate_flows(problem))
            assert total_cost(problem, flow) == best

    def test_conservative_residual_implies_optimal(self):
        # the other direction of the optimality criterion
        rng = random.Random(41)
        scanned = 0
        while scanned < 25:
            problem = random_problem(
                rng, max_nodes=4, max_edges=5, feasible=True, costs=True
            )
            flows = enumerate_flows(problem)
            best = min(total_cost(problem, z) for z in flows)
            for z in flows:
                residual = build_costed_residual(problem, z)
                conservative = find_negative_dicircuit(residual) is None
                assert conservative == (total_cost(problem, z) == best)
            scanned += 1


def test_residual_arcs_present_iff_capacity(diamond):
    residual = build_costed_residual(diamond, (0, 2, 0, 2))
    kinds = {(a.origin, a.forward) for a in residual.arcs}
    assert (0, True) in kinds and (0, False) not in kinds  # at lower bound
    assert (1, True) not in kinds and (1, False) in kinds  # at upper bound
