"""Problem representation shared by every solver.

A balanced assignment instance is a square matrix of non-negative integer
costs, ``entry(i, j)`` being the cost of worker ``i`` doing job ``j``.  A
solution is a permutation mapping each worker to a distinct job.

All costs are integers bounded by the signed 64-bit range.  Python never
wraps, so the bound is enforced explicitly: any entry or accumulated sum
above :data:`INT64_MAX` raises :class:`~assignbench.errors.CostOverflowError`.
That keeps results reproducible by fixed-width implementations.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import asdict, dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import (
    CostOverflowError,
    DimensionMismatchError,
    NegativeCostError,
    NonIntegerCostError,
    NonSquareError,
    PermutationInvalidError,
)

INT64_MAX = 2**63 - 1


def _check_entry(x, i: int, j: int) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
        raise NonIntegerCostError(f"entry ({i}, {j}) is not an integer: {x!r}")
    x = int(x)
    if x < 0:
        raise NegativeCostError(f"entry ({i}, {j}) is negative: {x}")
    if x > INT64_MAX:
        raise CostOverflowError(f"entry ({i}, {j}) exceeds the 64-bit range: {x}")
    return x


def _array_from_numpy(arr: np.ndarray) -> np.ndarray:
    if arr.size == 0 and arr.ndim in (1, 2) and arr.shape[0] == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise NonSquareError(f"cost matrix must be square, got shape {arr.shape}")
    if arr.dtype.kind not in "iu":
        raise NonIntegerCostError(f"cost matrix dtype must be integral, got {arr.dtype}")
    if arr.size and arr.min() < 0:
        i, j = np.argwhere(arr < 0)[0]
        raise NegativeCostError(f"entry ({i}, {j}) is negative: {arr[i, j]}")
    if arr.dtype == np.uint64 and arr.size and arr.max() > INT64_MAX:
        i, j = np.argwhere(arr > INT64_MAX)[0]
        raise CostOverflowError(f"entry ({i}, {j}) exceeds the 64-bit range")
    return arr.astype(np.int64, copy=True)


def _array_from_rows(rows) -> np.ndarray:
    rows = [list(r) for r in rows]
    k = len(rows)
    for i, row in enumerate(rows):
        if len(row) != k:
            raise NonSquareError(f"row {i} has {len(row)} entries, expected {k}")
    checked = [[_check_entry(x, i, j) for j, x in enumerate(row)] for i, row in enumerate(rows)]
    if k == 0:
        return np.zeros((0, 0), dtype=np.int64)
    return np.array(checked, dtype=np.int64)


class CostMatrix:
    """Immutable K x K grid of non-negative integer costs.

    Build one with :func:`new_cost_matrix` (or the constructor, which is the
    same thing).  The input is copied; mutating it afterwards has no effect.
    """

    __slots__ = ("_array", "_rows")

    def __init__(self, rows):
        if isinstance(rows, CostMatrix):
            arr = rows._array
        elif isinstance(rows, np.ndarray) and rows.dtype != object:
            arr = _array_from_numpy(rows)
        else:
            arr = _array_from_rows(rows)
        arr.flags.writeable = False
        self._array = arr
        self._rows = None

    @property
    def size(self) -> int:
        return self._array.shape[0]

    @property
    def array(self) -> np.ndarray:
        """Read-only ``int64`` view of the entries."""
        return self._array

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        """Entries as nested tuples of Python ints (fast scalar indexing)."""
        if self._rows is None:
            self._rows = tuple(tuple(r) for r in self._array.tolist())
        return self._rows

    def entry(self, i: int, j: int) -> int:
        return int(self._array[i, j])

    def max_entry(self) -> int:
        return int(self._array.max()) if self._array.size else 0

    def __eq__(self, other):
        if not isinstance(other, CostMatrix):
            return NotImplemented
        return np.array_equal(self._array, other._array)

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"CostMatrix({[list(r) for r in self.rows]})"


def new_cost_matrix(rows) -> CostMatrix:
    """Validate ``rows`` and return a :class:`CostMatrix`.

    Raises NonSquareError, NegativeCostError, NonIntegerCostError, or
    CostOverflowError for entries beyond the 64-bit range.
    """
    return CostMatrix(rows)


def validate_assignment(mapping, k: int) -> None:
    """Raise PermutationInvalidError unless ``mapping`` permutes ``0..k-1``."""
    if isinstance(mapping, Assignment):
        mapping = mapping.mapping
    if len(mapping) != k:
        raise PermutationInvalidError("length", f"assignment has length {len(mapping)}, expected {k}")
    seen = [False] * k
    for worker, job in enumerate(mapping):
        if isinstance(job, bool) or not isinstance(job, (int, np.integer)) or not 0 <= job < k:
            raise PermutationInvalidError(
                "out-of-range", f"worker {worker} has job {job!r} outside 0..{k - 1}"
            )
        if seen[job]:
            raise PermutationInvalidError("duplicate", f"job {job} is assigned twice")
        seen[job] = True


@dataclass(frozen=True)
class Assignment:
    """Position ``i`` of ``mapping`` holds the job given to worker ``i``."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(int(j) if isinstance(j, np.integer) else j for j in self.mapping)
        validate_assignment(mapping, len(mapping))
        object.__setattr__(self, "mapping", mapping)

    @property
    def size(self) -> int:
        return len(self.mapping)

    def pairs(self) -> list[tuple[int, int]]:
        return list(enumerate(self.mapping))


def assignment_cost(m: CostMatrix, a: Union[Assignment, Sequence[int]]) -> int:
    """Total cost of giving worker ``i`` job ``a[i]`` for every ``i``."""
    mapping = a.mapping if isinstance(a, Assignment) else tuple(a)
    if len(mapping) != m.size:
        raise DimensionMismatchError(
            f"assignment covers {len(mapping)} workers, matrix has {m.size}"
        )
    validate_assignment(mapping, m.size)
    rows = m.rows
    total = sum(rows[i][j] for i, j in enumerate(mapping))
    if total > INT64_MAX:
        raise CostOverflowError(f"assignment cost {total} exceeds the 64-bit range")
    return total


def lex_permutations(k: int) -> Iterator[tuple[int, ...]]:
    # itertools emits permutations of a sorted input in lexicographic order, lazily.
    return itertools.permutations(range(k))


def permutations(k: int) -> Iterator[Assignment]:
    """Yield all ``k!`` assignments of size ``k`` in lexicographic order.

    ``k == 0`` yields a single empty assignment.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    for p in lex_permutations(k):
        yield Assignment(p)


@dataclass(frozen=True)
class DualCertificate:
    """Row and column potentials ``u``, ``v`` proving a cost is optimal."""

    row_potentials: tuple[int, ...]
    col_potentials: tuple[int, ...]

    def total(self) -> int:
        return sum(self.row_potentials) + sum(self.col_potentials)


@dataclass(frozen=True)
class ExploredTreeStats:
    nodes_expanded: int = 0
    nodes_generated: int = 0
    edges_generated: int = 0
    max_frontier: int = 0


@dataclass(frozen=True)
class SolveReport:
    optimal_cost: int
    assignment: Assignment
    nodes_expanded: int
    edges_generated: int
    elapsed_ns: int
    certificate: Optional[DualCertificate] = None
    tree_stats: Optional[ExploredTreeStats] = field(default=None)

    def to_dict(self) -> dict:
        return {
            "optimal_cost": self.optimal_cost,
            "assignment": list(self.assignment.mapping),
            "nodes_expanded": self.nodes_expanded,
            "edges_generated": self.edges_generated,
            "elapsed_ns": self.elapsed_ns,
            "certificate": None if self.certificate is None else {
                "row_potentials": list(self.certificate.row_potentials),
                "col_potentials": list(self.certificate.col_potentials),
            },
            "tree_stats": None if self.tree_stats is None else asdict(self.tree_stats),
        }
