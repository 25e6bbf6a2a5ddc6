"""Kuhn-Munkres (Hungarian) solver with an optimality certificate.

The method reduces rows, then columns, then repeatedly covers the zeros of
the reduced matrix with a minimum set of lines and, while fewer than K lines
suffice, shifts the smallest uncovered value onto the covered lines.

Potentials are kept explicitly instead of rewriting the matrix in place:
``reduced[i, j] = original[i, j] - u[i] - v[j]``.  When the loop stops the
potentials form a dual certificate whose sum equals the optimal cost.

The step functions (:func:`reduce_rows`, :func:`reduce_cols`,
:func:`min_line_cover`, :func:`adjust_uncovered`) operate on explicit
grids and are meant for inspection and testing.  :func:`solve_hungarian`
runs the same loop but keeps the maximum matching and the alternating
forest that defines the Koenig cover alive between adjust steps, so one
adjust costs ``O(K)`` instead of ``O(K^2)``.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NoUncoveredCellError
from .model import (
    INT64_MAX,
    Assignment,
    CostMatrix,
    DualCertificate,
    SolveReport,
    assignment_cost,
)


def _work_dtype(m: CostMatrix):
    # Potentials stay within about K * max_entry in magnitude; fall back to
    # Python ints when that could leave the int64 range.
    if m.max_entry() * (2 * m.size + 2) <= INT64_MAX:
        return np.int64
    return object


def _work_array(m: CostMatrix) -> np.ndarray:
    if _work_dtype(m) is np.int64:
        return m.array
    return np.array([list(r) for r in m.rows], dtype=object).reshape(m.size, m.size)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class ReducedState:
    original: np.ndarray
    reduced: np.ndarray
    row_potentials: np.ndarray
    col_potentials: np.ndarray
    iteration_count: int = 0

    @classmethod
    def start(cls, m: CostMatrix) -> "ReducedState":
        c = _work_array(m)
        zeros = np.zeros(m.size, dtype=c.dtype)
        if c.dtype == object:
            zeros = np.array([0] * m.size, dtype=object)
        return cls._make(c, zeros, zeros.copy(), 0)

    @classmethod
    def _make(cls, c, u, v, iterations) -> "ReducedState":
        reduced = c - u[:, None] - v[None, :]
        return cls(_frozen(c), _frozen(reduced), _frozen(u), _frozen(v), iterations)

    @property
    def size(self) -> int:
        return self.original.shape[0]

    def potential_sum(self) -> int:
        return int(sum(self.row_potentials.tolist()) + sum(self.col_potentials.tolist()))


@dataclass(frozen=True)
class LineCover:
    covered_rows: frozenset
    covered_cols: frozenset

    @property
    def size(self) -> int:
        return len(self.covered_rows) + len(self.covered_cols)

    def covers(self, i: int, j: int) -> bool:
        return i in self.covered_rows or j in self.covered_cols


def reduce_rows(state: ReducedState) -> ReducedState:
    """Subtract each row's minimum; every row then holds a zero."""
    if state.size == 0:
        return state
    mins = state.reduced.min(axis=1)
    u = state.row_potentials + mins
    return ReducedState._make(state.original, u, state.col_potentials.copy(), state.iteration_count)


def reduce_cols(state: ReducedState) -> ReducedState:
    """Subtract each column's minimum; every column then holds a zero."""
    if state.size == 0:
        return state
    mins = state.reduced.min(axis=0)
    v = state.col_potentials + mins
    return ReducedState._make(state.original, state.row_potentials.copy(), v, state.iteration_count)


def _zero_adjacency(reduced: np.ndarray) -> list[list[int]]:
    k = reduced.shape[0]
    rows, cols = np.nonzero(reduced == 0)
    adj: list[list[int]] = [[] for _ in range(k)]
    for i, j in zip(rows.tolist(), cols.tolist()):
        adj[i].append(j)
    return adj


def _max_zero_matching(adj: list[list[int]], k: int) -> tuple[list[int], list[int]]:
    """Kuhn's augmenting-path matching; rows and columns scanned ascending."""
    row_match = [-1] * k
    col_match = [-1] * k
    for s in range(k):
        visited = [False] * k
        stack = [(s, iter(adj[s]))]
        via: list[int] = []
        while stack:
            r, it = stack[-1]
            for j in it:
                if visited[j]:
                    continue
                visited[j] = True
                if col_match[j] == -1:
                    for (row, _), col in zip(stack, via + [j]):
                        row_match[row] = col
                        col_match[col] = row
                    stack = []
                    break
                via.append(j)
                stack.append((col_match[j], iter(adj[col_match[j]])))
                break
            else:
                stack.pop()
                if via:
                    via.pop()
    return row_match, col_match


def _koenig_cover(adj, row_match, col_match, k) -> LineCover:
    zrow = [False] * k
    zcol = [False] * k
    queue = deque(i for i in range(k) if row_match[i] == -1)
    for i in queue:
        zrow[i] = True
    while queue:
        r = queue.popleft()
        for j in adj[r]:
            if not zcol[j]:
                zcol[j] = True
                nxt = col_match[j]
                if nxt != -1 and not zrow[nxt]:
                    zrow[nxt] = True
                    queue.append(nxt)
    return LineCover(
        frozenset(i for i in range(k) if not zrow[i]),
        frozenset(j for j in range(k) if zcol[j]),
    )


def min_line_cover(reduced) -> LineCover:
    """Minimum set of rows and columns covering every zero of ``reduced``.

    Built from a maximum matching on the zero cells (Koenig's theorem): the
    cover takes the rows not reachable from an unmatched row by alternating
    paths and the columns that are reachable.
    """
    reduced = np.asarray(reduced)
    k = reduced.shape[0] if reduced.size else 0
    adj = _zero_adjacency(reduced) if k else []
    row_match, col_match = _max_zero_matching(adj, k)
    return _koenig_cover(adj, row_match, col_match, k)


def adjust_uncovered(state: ReducedState, cover: LineCover) -> ReducedState:
    """Shift the smallest uncovered value from uncovered rows onto covered columns."""
    k = state.size
    if cover.size >= k:
        raise NoUncoveredCellError(f"cover has {cover.size} lines for K={k}; nothing to adjust")
    open_rows = np.array([i not in cover.covered_rows for i in range(k)])
    covered_cols = np.array([j in cover.covered_cols for j in range(k)])
    delta = state.reduced[np.ix_(open_rows, ~covered_cols)].min()
    u = state.row_potentials.copy()
    v = state.col_potentials.copy()
    u[open_rows] += delta
    v[covered_cols] -= delta
    return ReducedState._make(state.original, u, v, state.iteration_count + 1)


def _lex_first_perfect_matching(adj: list[list[int]], row_match: list[int]) -> list[int]:
    """Lexicographically smallest perfect matching on the zero graph.

    ``row_match`` must already be a perfect matching.  Row by row, the row is
    moved to its smallest zero column that still admits a completion, which
    is found by a backwards alternating search toward its current column.
    """
    k = len(row_match)
    row_match = list(row_match)
    col_match = [-1] * k
    for i, j in enumerate(row_match):
        col_match[j] = i
    col_adj: list[list[int]] = [[] for _ in range(k)]
    for i in range(k):
        for j in adj[i]:
            col_adj[j].append(i)
    for i in range(k):
        cur = row_match[i]
        smaller = [j for j in adj[i] if j < cur and col_match[j] > i]
        if not smaller:
            continue
        # rows r > i that can hand their column on along a chain ending at cur
        nxt = {}
        queue = deque([cur])
        while queue:
            t = queue.popleft()
            for r in col_adj[t]:
                if r > i and r not in nxt:
                    nxt[r] = t
                    queue.append(row_match[r])
        for j in smaller:
            r = col_match[j]
            if r in nxt:
                row_match[i] = j
                col_match[j] = i
                while True:
                    t = nxt[r]
                    prev = col_match[t]
                    row_match[r] = t
                    col_match[t] = r
                    if t == cur:
                        break
                    r = prev
                break
    return row_match


class HungarianInvariantError(AssertionError):
    pass


def _check_stuck_state(c, u, v, zrow, zcol, row_match):
    reduced = c - u[:, None] - v[None, :]
    if (reduced < 0).any():
        raise HungarianInvariantError("negative reduced cost")
    if (reduced[np.ix_(zrow, ~zcol)] == 0).any():
        raise HungarianInvariantError("a zero escapes the line cover")
    lines = int((~zrow).sum() + zcol.sum())
    matched = int((row_match >= 0).sum())
    if lines != matched:
        raise HungarianInvariantError(f"cover has {lines} lines but matching has {matched} edges")
    if lines != min_line_cover(reduced).size:
        raise HungarianInvariantError("cover is not minimum")


def _run(c: np.ndarray, check: bool):
    """Return (u, v, row_match, adjust_steps, tree_steps) for a square array."""
    k = c.shape[0]
    u = c.min(axis=1)
    v = (c - u[:, None]).min(axis=0)
    row_match = np.full(k, -1, dtype=np.intp)
    col_match = np.full(k, -1, dtype=np.intp)
    zero = (c - u[:, None] - v[None, :]) == 0
    for i in range(k):
        js = np.flatnonzero(zero[i] & (col_match < 0))
        if js.size:
            row_match[i] = js[0]
            col_match[js[0]] = i
    del zero

    adjusts = 0
    tree_steps = 0
    while True:
        free_rows = np.flatnonzero(row_match < 0)
        if free_rows.size == 0:
            break
        zrow = np.zeros(k, dtype=bool)
        zcol = np.zeros(k, dtype=bool)
        col_parent = np.full(k, -1, dtype=np.intp)
        slack = None
        slack_row = None

        def add_row(r):
            nonlocal slack, slack_row
            zrow[r] = True
            s = c[r] - u[r] - v
            if slack is None:
                slack = s.copy()
                slack_row = np.full(k, r, dtype=np.intp)
            else:
                better = s < slack
                slack[better] = s[better]
                slack_row[better] = r

        for r in free_rows:
            add_row(r)
        while True:
            tight = np.flatnonzero((slack == 0) & ~zcol)
            if tight.size == 0:
                # matching is maximum on the zeros; the cover is
                # (rows outside the forest) + (columns inside it)
                if check:
                    before = sum(u.tolist()) + sum(v.tolist())
                    _check_stuck_state(c, u, v, zrow, zcol, row_match)
                open_cols = ~zcol
                delta = slack[open_cols].min()
                u[zrow] += delta
                v[zcol] -= delta
                slack[open_cols] -= delta
                adjusts += 1
                if check and sum(u.tolist()) + sum(v.tolist()) <= before:
                    raise HungarianInvariantError("potential sum did not increase")
                continue
            j = tight[0]
            zcol[j] = True
            col_parent[j] = slack_row[j]
            tree_steps += 1
            if col_match[j] < 0:
                while j != -1:
                    r = col_parent[j]
                    prev = row_match[r]
                    row_match[r] = j
                    col_match[j] = r
                    j = prev
                break
            add_row(col_match[j])
    return u, v, row_match, adjusts, tree_steps


def solve_hungarian(m: CostMatrix, *, check_invariants: bool = False) -> SolveReport:
    """Solve ``m`` exactly in polynomial time.

    ``nodes_expanded`` counts adjust steps; ``edges_generated`` counts
    alternating-forest growth steps (one per column labelled), the
    elementary operation of the cover search.  With ``check_invariants``
    every adjust step re-verifies non-negativity, cover validity and cover
    minimality against an independent Koenig construction.
    """
    k = m.size
    c = _work_array(m)
    start = time.perf_counter_ns()
    if k == 0:
        u = v = np.zeros(0, dtype=np.int64)
        mapping: list[int] = []
        adjusts = tree_steps = 0
    else:
        u, v, row_match, adjusts, tree_steps = _run(c, check_invariants)
        reduced = c - u[:, None] - v[None, :]
        mapping = _lex_first_perfect_matching(_zero_adjacency(reduced), row_match.tolist())
    elapsed = time.perf_counter_ns() - start
    assignment = Assignment(mapping)
    cost = assignment_cost(m, assignment)
    return SolveReport(
        optimal_cost=cost,
        assignment=assignment,
        nodes_expanded=adjusts,
        edges_generated=tree_steps,
        elapsed_ns=elapsed,
        certificate=DualCertificate(
            tuple(int(x) for x in u.tolist()), tuple(int(x) for x in v.tolist())
        ),
    )


@dataclass(frozen=True)
class CertificateViolation:
    """Why a certificate fails; ``kind`` is one of ``missing``, ``shape``,
    ``dual-infeasible``, ``slackness`` or ``objective``."""

    kind: str
    message: str
    i: Optional[int] = None
    j: Optional[int] = None


def certificate_violations(m: CostMatrix, report: SolveReport) -> list[CertificateViolation]:
    cert = report.certificate
    if cert is None:
        return [CertificateViolation("missing", "report carries no certificate")]
    k = m.size
    u, v = cert.row_potentials, cert.col_potentials
    if len(u) != k or len(v) != k or report.assignment.size != k:
        return [CertificateViolation("shape", "certificate or assignment does not match K")]
    rows = m.rows
    out = []
    for i in range(k):
        for j in range(k):
            if u[i] + v[j] > rows[i][j]:
                out.append(CertificateViolation(
                    "dual-infeasible",
                    f"u[{i}] + v[{j}] = {u[i] + v[j]} > c[{i}][{j}] = {rows[i][j]}", i, j))
    for i, j in enumerate(report.assignment.mapping):
        if u[i] + v[j] != rows[i][j]:
            out.append(CertificateViolation(
                "slackness",
                f"assigned cell ({i}, {j}) not tight: {u[i] + v[j]} != {rows[i][j]}", i, j))
    total = sum(u) + sum(v)
    if total != report.optimal_cost:
        out.append(CertificateViolation(
            "objective", f"sum of potentials {total} != optimal cost {report.optimal_cost}"))
    return out


def verify_certificate(m: CostMatrix, report: SolveReport) -> Optional[CertificateViolation]:
    """Return ``None`` if the certificate proves optimality, else the first
    violation found (cells scanned row-major)."""
    violations = certificate_violations(m, report)
    return violations[0] if violations else None
