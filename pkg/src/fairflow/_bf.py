"""Label-correcting search over an arc list from a virtual zero root.

Works for any weights drawn from a totally ordered group: ints for
scalar costs, lexicographically compared tuples for vector costs.  The
caller supplies the addition and the zero label.

Detection and extraction are the classic predecessor-walk: if a full
pass over the arcs still improves a label after node_count passes, a
negative cycle exists; walking predecessors node_count steps from the
last improved node lands inside one, and the predecessor cycle found
there is strictly negative.
"""

from __future__ import annotations

from typing import Callable, Sequence, TypeVar

Label = TypeVar("Label")


def bellman_ford(
    node_count: int,
    tails: Sequence[int],
    heads: Sequence[int],
    weights: Sequence,
    add: Callable,
    zero,
) -> tuple[list, list[int] | None]:
    """Shortest labels from a zero root, or a negative cycle.

    Returns (labels, None) when the weights are conservative, else
    (partial labels, arc indices of a negative di-circuit in traversal
    order).  Arcs are relaxed in index order, so the result is
    deterministic.
    """
    dist = [zero] * node_count
    pred = [-1] * node_count
    last_improved = -1
    for _ in range(node_count):
        changed = False
        for idx in range(len(tails)):
            cand = add(dist[tails[idx]], weights[idx])
            if cand < dist[heads[idx]]:
                dist[heads[idx]] = cand
                pred[heads[idx]] = idx
                changed = True
                last_improved = heads[idx]
        if not changed:
            return dist, None
    node = last_improved
    for _ in range(node_count):
        node = tails[pred[node]]
    cycle: list[int] = []
    start = node
    while True:
        idx = pred[node]
        cycle.append(idx)
        node = tails[idx]
        if node == start:
            break
    cycle.reverse()
    return dist, cycle
