"""Branch and bound over the tree of partial assignments.

Level ``d`` of the tree fixes the job of worker ``d``, so a node at depth
``d`` has ``K - d`` children and the full tree holds
``sum(K! / (K - d)!)`` nodes.  Only valid partial assignments are
generated.

Every node carries ``g`` (cost so far) and ``h``, the sum over unassigned
workers of their cheapest unassigned job.  ``h`` never overestimates the
completion cost and ``g + h`` never decreases from parent to child.

Four frontier disciplines are supported:

* ``FIFO``: queue, breadth first.
* ``LIFO``: stack, depth first, lowest job index popped first.
* ``LEAST_COST``: priority on ``g`` (uniform-cost search).
* ``A_STAR``: priority on ``f = g + h``.

All four prune a node when ``f >= incumbent`` and update the incumbent
as soon as a complete assignment is generated.  Priority ties are broken
by deeper node first, then lower job index of the node's own worker, then
generation order.
"""

from __future__ import annotations

import enum
import heapq
import time
from collections import deque
from collections.abc import Callable
from dataclasses import dataclass
from typing import Optional

from .errors import CostOverflowError, ExpandCompleteError, InstanceTooLargeError
from .model import (
    INT64_MAX,
    Assignment,
    CostMatrix,
    ExploredTreeStats,
    SolveReport,
)

DEFAULT_BLIND_MAX_SIZE = 12


class Strategy(enum.Enum):
    FIFO = "fifo"
    LIFO = "lifo"
    LEAST_COST = "least"
    A_STAR = "astar"


@dataclass(frozen=True, slots=True)
class SearchNode:
    depth: int
    partial_mapping: tuple[int, ...]
    g_cost: int
    h_bound: int

    @property
    def f_bound(self) -> int:
        return self.g_cost + self.h_bound


def _bound(rows, depth: int, used: set) -> int:
    total = 0
    for i in range(depth, len(rows)):
        row = rows[i]
        total += min(row[j] for j in range(len(row)) if j not in used)
    return total


def lower_bound(m: CostMatrix, node: SearchNode) -> int:
    """Sum over unassigned workers of their cheapest unassigned job."""
    if node.depth >= m.size:
        return 0
    return _bound(m.rows, node.depth, set(node.partial_mapping))


def root_node(m: CostMatrix) -> SearchNode:
    return SearchNode(0, (), 0, lower_bound(m, SearchNode(0, (), 0, 0)))


def expand(m: CostMatrix, node: SearchNode) -> list[SearchNode]:
    """Children of ``node``: worker ``depth`` takes each free job, ascending."""
    k = m.size
    d = node.depth
    if d >= k:
        raise ExpandCompleteError(f"node at depth {d} is a complete assignment")
    rows = m.rows
    used = set(node.partial_mapping)
    children = []
    for j in range(k):
        if j in used:
            continue
        used.add(j)
        h = _bound(rows, d + 1, used)
        used.discard(j)
        children.append(SearchNode(d + 1, node.partial_mapping + (j,), node.g_cost + rows[d][j], h))
    return children


@dataclass(frozen=True)
class TreeStatsViolation:
    nodes_generated: int
    edges_generated: int

    @property
    def message(self) -> str:
        return (f"{self.edges_generated} edges for {self.nodes_generated} nodes; "
                f"a tree needs exactly {self.nodes_generated - 1}")


def tree_stats_check(stats: ExploredTreeStats) -> Optional[TreeStatsViolation]:
    """``None`` iff the explored tree has one edge fewer than it has nodes."""
    if stats.edges_generated == stats.nodes_generated - 1:
        return None
    return TreeStatsViolation(stats.nodes_generated, stats.edges_generated)


def full_tree_size(k: int) -> int:
    """Node count of the complete tree of valid partial assignments."""
    total, level = 1, 1
    for d in range(k):
        level *= k - d
        total += level
    return total


def _greedy_incumbent(rows) -> tuple[int, tuple[int, ...]]:
    used = set()
    mapping = []
    for row in rows:
        j = min((j for j in range(len(row)) if j not in used), key=lambda j: row[j])
        used.add(j)
        mapping.append(j)
    return sum(row[j] for row, j in zip(rows, mapping)), tuple(mapping)


class _Frontier:
    def __init__(self, strategy: Strategy):
        self.strategy = strategy
        self.items = deque() if strategy is Strategy.FIFO else []
        self.seq = 0

    def __len__(self):
        return len(self.items)

    def push_children(self, children):
        s = self.strategy
        if s is Strategy.FIFO:
            self.items.extend(children)
        elif s is Strategy.LIFO:
            self.items.extend(reversed(children))
        else:
            for c in children:
                prio = c.g_cost if s is Strategy.LEAST_COST else c.f_bound
                heapq.heappush(self.items, (prio, -c.depth, c.partial_mapping[-1], self.seq, c))
                self.seq += 1

    def push_root(self, node):
        if self.strategy in (Strategy.FIFO, Strategy.LIFO):
            self.items.append(node)
        else:
            heapq.heappush(self.items, (0, 0, -1, -1, node))

    def pop(self):
        s = self.strategy
        if s is Strategy.FIFO:
            return self.items.popleft()
        if s is Strategy.LIFO:
            return self.items.pop()
        return heapq.heappop(self.items)[-1]

    def exhausted(self, node, incumbent) -> bool:
        # LEAST_COST pops non-decreasing g and A_STAR non-decreasing f; both
        # are <= f of every queued node, so once the popped key reaches the
        # incumbent nothing left can improve it.
        if self.strategy is Strategy.LEAST_COST:
            return node.g_cost >= incumbent
        return self.strategy is Strategy.A_STAR


def solve_bnb(
    m: CostMatrix,
    strategy: Strategy = Strategy.A_STAR,
    *,
    max_size: Optional[int] = DEFAULT_BLIND_MAX_SIZE,
    warm_start: bool = False,
    visitor: Optional[Callable[[str, SearchNode], None]] = None,
) -> SolveReport:
    """Optimal assignment by branch and bound with the given frontier.

    ``max_size`` caps K for the blind strategies (FIFO, LIFO) only; pass
    ``None`` to lift it.  ``warm_start`` seeds the incumbent with a greedy
    row-by-row assignment.  ``visitor(event, node)`` is called with
    ``"generate"`` for every created node, ``"expand"`` for every node whose
    children are produced and ``"prune"`` for every node discarded by the
    bound.
    """
    strategy = Strategy(strategy)
    k = m.size
    if (max_size is not None and k > max_size
            and strategy in (Strategy.FIFO, Strategy.LIFO)):
        raise InstanceTooLargeError(f"{strategy.name} branch and bound capped at K={max_size}, got K={k}")
    rows = m.rows
    start = time.perf_counter_ns()

    incumbent = None
    best: Optional[tuple[int, ...]] = None
    if warm_start and k:
        incumbent, best = _greedy_incumbent(rows)

    root = root_node(m)
    expanded = 0
    generated = 1
    edges = 0
    max_frontier = 0
    if visitor:
        visitor("generate", root)

    frontier = _Frontier(strategy)
    if k == 0:
        incumbent, best = 0, ()
    else:
        frontier.push_root(root)
        max_frontier = 1

    while frontier:
        node = frontier.pop()
        if incumbent is not None and node.f_bound >= incumbent:
            if visitor:
                visitor("prune", node)
            if frontier.exhausted(node, incumbent):
                while frontier:
                    rest = frontier.pop()
                    if visitor:
                        visitor("prune", rest)
                break
            continue
        children = expand(m, node)
        expanded += 1
        generated += len(children)
        edges += len(children)
        if visitor:
            visitor("expand", node)
        survivors = []
        for child in children:
            if visitor:
                visitor("generate", child)
            if child.depth == k:
                if incumbent is None or child.g_cost < incumbent:
                    incumbent, best = child.g_cost, child.partial_mapping
                elif visitor:
                    visitor("prune", child)
                continue
            if incumbent is not None and child.f_bound >= incumbent:
                if visitor:
                    visitor("prune", child)
                continue
            survivors.append(child)
        frontier.push_children(survivors)
        max_frontier = max(max_frontier, len(frontier))

    elapsed = time.perf_counter_ns() - start
    if incumbent > INT64_MAX:
        raise CostOverflowError(f"optimal cost {incumbent} exceeds the 64-bit range")
    stats = ExploredTreeStats(expanded, generated, edges, max_frontier)
    return SolveReport(
        optimal_cost=incumbent,
        assignment=Assignment(best),
        nodes_expanded=expanded,
        edges_generated=edges,
        elapsed_ns=elapsed,
        tree_stats=stats,
    )
