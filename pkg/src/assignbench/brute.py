"""Exhaustive solver: score every permutation, keep the first minimum.

This is the correctness oracle for the other solvers, so it is kept as
simple as possible.  Cost is ``O(K * K!)``.
"""

from __future__ import annotations

import time
from typing import Optional

from .errors import CostOverflowError, InstanceTooLargeError
from .model import INT64_MAX, Assignment, CostMatrix, SolveReport, lex_permutations

DEFAULT_MAX_SIZE = 12


def solve_brute_force(m: CostMatrix, *, max_size: Optional[int] = DEFAULT_MAX_SIZE) -> SolveReport:
    """Minimise over all ``K!`` assignments.

    Ties go to the lexicographically first permutation.  ``max_size=None``
    lifts the size cap.
    """
    k = m.size
    if max_size is not None and k > max_size:
        raise InstanceTooLargeError(f"brute force capped at K={max_size}, got K={k}")
    rows = m.rows
    start = time.perf_counter_ns()
    best_cost = None
    best = None
    evaluated = 0
    for perm in lex_permutations(k):
        evaluated += 1
        cost = sum([r[j] for r, j in zip(rows, perm)])
        if best_cost is None or cost < best_cost:
            best_cost = cost
            best = perm
    elapsed = time.perf_counter_ns() - start
    if best_cost > INT64_MAX:
        raise CostOverflowError(f"optimal cost {best_cost} exceeds the 64-bit range")
    return SolveReport(
        optimal_cost=best_cost,
        assignment=Assignment(best),
        nodes_expanded=evaluated,
        edges_generated=0,
        elapsed_ns=elapsed,
    )


def best_completion(m: CostMatrix, partial_mapping) -> int:
    """Cheapest full assignment extending ``partial_mapping`` (workers in order).

    Exhaustive over the remaining ``(K - d)!`` completions; used to audit
    the branch-and-bound lower bound.
    """
    rows = m.rows
    d = len(partial_mapping)
    fixed = sum(rows[i][j] for i, j in enumerate(partial_mapping))
    free = [j for j in range(m.size) if j not in set(partial_mapping)]
    best = None
    for perm in lex_permutations(len(free)):
        cost = sum(rows[d + i][free[p]] for i, p in enumerate(perm))
        if best is None or cost < best:
            best = cost
    return fixed + best
