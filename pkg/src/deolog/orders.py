"""Utility-order machinery: satisfiability of rank-comparison constraint
sets, and exhaustive enumeration of weak orders (the brute-force oracle).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .models import World

MAX_ORDER_WORLDS = 8


@dataclass(frozen=True)
class ComparisonAtom:
    """rank(left) >= rank(right), or strictly > when strict."""
    left: World
    right: World
    strict: bool = False


def solve_order_constraints(atoms) -> dict | None:
    """Integer ranks satisfying every comparison atom, or None.

    A constraint set is unsatisfiable exactly when some cycle of comparisons
    contains a strict one; detected by longest-path closure (strict edges
    weigh 1, weak edges 0).
    """
    nodes = []
    index = {}
    for a in atoms:
        for w in (a.left, a.right):
            if w not in index:
                index[w] = len(nodes)
                nodes.append(w)
    n = len(nodes)
    neg = -math.inf
    dist = [[neg] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = 0
    for a in atoms:
        i, j = index[a.left], index[a.right]
        weight = 1 if a.strict else 0
        if weight > dist[i][j]:
            dist[i][j] = weight
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == neg:
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt > di[j]:
                    di[j] = alt
    if any(dist[i][i] > 0 for i in range(n)):
        return None
    return {nodes[i]: max(x for x in dist[i] if x != neg) for i in range(n)}


def constraints_satisfiable(constraints) -> dict | None:
    """Convenience wrapper: constraints as (left, right, strict) triples."""
    return solve_order_constraints(
        [ComparisonAtom(l, r, s) for l, r, s in constraints])


def _ordered_partitions(items):
    if not items:
        yield []
        return
    first = items[0]
    for parts in _ordered_partitions(items[1:]):
        for i in range(len(parts)):
            yield parts[:i] + [[first] + parts[i]] + parts[i + 1:]
        for i in range(len(parts) + 1):
            yield parts[:i] + [[first]] + parts[i:]


def bruteforce_weak_orders(worlds):
    """Yield every weak order on the given worlds exactly once, as canonical
    surjective rank maps onto {0..m} (earlier blocks rank higher)."""
    worlds = sorted(worlds, key=lambda w: w.name)
    if len(worlds) > MAX_ORDER_WORLDS:
        raise ValueError(
            f"{len(worlds)} worlds exceeds weak-order cap {MAX_ORDER_WORLDS}")
    for blocks in _ordered_partitions(worlds):
        top = len(blocks) - 1
        yield {w: top - i for i, block in enumerate(blocks) for w in block}


def ordered_bell(n: int) -> int:
    """Number of weak orders on n elements, by the standard recurrence."""
    a = [1]
    for m in range(1, n + 1):
        a.append(sum(math.comb(m, k) * a[m - k] for k in range(1, m + 1)))
    return a[n]
