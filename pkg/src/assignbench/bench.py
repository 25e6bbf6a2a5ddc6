"""Seeded instance generation, timing harness and CSV output.

Instances are reproducible bit for bit across implementations:

* ``SplitMix64`` with the published constants (state increment
  ``0x9E3779B97F4A7C15``, multipliers ``0xBF58476D1CE4E5B9`` and
  ``0x94D049BB133111EB``, shifts 30/27/31).
* ``mix64(x)`` is the first output of a SplitMix64 stream seeded with ``x``.
* The seed of trial ``t`` at size ``k`` is
  ``mix64(mix64(base_seed ^ k) ^ t)``, all arithmetic modulo 2**64.
* ``gen_instance(k, seed, (lo, hi))`` seeds one stream with ``seed`` and
  fills the matrix row-major with ``lo + next() % (hi - lo + 1)``.
"""

from __future__ import annotations

import io
import logging
import statistics
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import AssignmentError, InvalidRangeError
from .model import INT64_MAX, CostMatrix
from .solvers import SOLVER_NAMES, solve

log = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB

CSV_HEADER = "solver,k,seed,trial,nodes_expanded,edges_generated,elapsed_ns,optimal_cost"

DEFAULT_BENCH_CAPS = {"brute": 11, "bnb_fifo": 12, "bnb_lifo": 12}
DEFAULT_COST_RANGE = (0, 99)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MUL1) & MASK64
        z = ((z ^ (z >> 27)) * _MUL2) & MASK64
        return z ^ (z >> 31)


def mix64(x: int) -> int:
    return SplitMix64(x).next()


def derive_seed(base_seed: int, k: int, trial: int) -> int:
    return mix64(mix64((base_seed ^ k) & MASK64) ^ trial)


def _check_range(cost_range) -> tuple[int, int]:
    lo, hi = (int(x) for x in cost_range)
    if lo < 0 or lo > hi or hi > INT64_MAX:
        raise InvalidRangeError(f"cost range must satisfy 0 <= lo <= hi <= 2**63-1, got [{lo}, {hi}]")
    return lo, hi


def _splitmix_block(seed: int, n: int) -> np.ndarray:
    # Same stream as SplitMix64(seed).next() n times; uint64 ops wrap mod 2**64.
    z = np.arange(1, n + 1, dtype=np.uint64) * np.uint64(GOLDEN_GAMMA) + np.uint64(seed & MASK64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MUL1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MUL2)
    return z ^ (z >> np.uint64(31))


def gen_instance(k: int, seed: int, cost_range=DEFAULT_COST_RANGE) -> CostMatrix:
    lo, hi = _check_range(cost_range)
    if k < 0:
        raise ValueError("k must be non-negative")
    draws = _splitmix_block(seed, k * k)
    values = draws % np.uint64(hi - lo + 1) + np.uint64(lo)
    return CostMatrix(values.astype(np.int64).reshape(k, k))


@dataclass(frozen=True)
class BenchRecord:
    """One timed solve.  Rows with ``status`` other than ``"ok"`` (skipped by
    cap, or failed) carry ``-1`` in every measurement column."""

    solver: str
    k: int
    seed: int
    trial: int
    nodes_expanded: int
    edges_generated: int
    elapsed_ns: int
    optimal_cost: int
    status: str = "ok"
    detail: str = ""

    @classmethod
    def marker(cls, solver, k, seed, trial, status, detail="") -> "BenchRecord":
        return cls(solver, k, seed, trial, -1, -1, -1, -1, status, detail)

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def csv_row(self) -> str:
        return (f"{self.solver},{self.k},{self.seed},{self.trial},{self.nodes_expanded},"
                f"{self.edges_generated},{self.elapsed_ns},{self.optimal_cost}")


@dataclass
class BenchConfig:
    sizes: list
    trials_per_size: int = 3
    seed: int = 0
    cost_range: tuple = DEFAULT_COST_RANGE
    solvers: tuple = SOLVER_NAMES
    per_solver_caps: dict = field(default_factory=dict)
    warmup: bool = True

    def __post_init__(self):
        self.sizes = sorted(set(int(k) for k in self.sizes))
        if not self.sizes:
            raise ValueError("sizes must be non-empty")
        if any(k < 0 for k in self.sizes):
            raise ValueError("sizes must be non-negative")
        if self.trials_per_size < 1:
            raise ValueError("trials_per_size must be >= 1")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.cost_range = _check_range(self.cost_range)
        unknown = set(self.solvers) - set(SOLVER_NAMES)
        if unknown or not self.solvers:
            raise ValueError(f"unknown solvers: {sorted(unknown)}")
        self.solvers = tuple(sorted(set(self.solvers)))
        self.per_solver_caps = {**DEFAULT_BENCH_CAPS, **self.per_solver_caps}

    def cap(self, solver: str) -> Optional[int]:
        return self.per_solver_caps.get(solver)


def run_trial(solver: str, m: CostMatrix, *, seed: int = 0, trial: int = 0,
              cap: Optional[int] = None) -> BenchRecord:
    """Time one solve.  Only the solver call is inside the clock reads."""
    k = m.size
    if cap is not None and k > cap:
        return BenchRecord.marker(solver, k, seed, trial, "skipped", f"K={k} above cap {cap}")
    start = time.perf_counter_ns()
    report = solve(solver, m, max_size=None)
    elapsed = time.perf_counter_ns() - start
    return BenchRecord(solver, k, seed, trial, report.nodes_expanded, report.edges_generated,
                       elapsed, report.optimal_cost)


def run_suite(config: BenchConfig) -> list[BenchRecord]:
    """Every enabled solver on the same seeded instances.

    Records come back ordered by (k, trial, solver).  Solver errors become
    ``status="error"`` rows instead of aborting the run.

    Execution is trial-major (every size once, then every size again), so
    slow phases of a shared machine spread over all sizes instead of
    skewing the median of one of them.
    """
    records = []
    warmed = set()
    for trial in range(config.trials_per_size):
        for k in config.sizes:
            seed = derive_seed(config.seed, k, trial)
            m = gen_instance(k, seed, config.cost_range)
            for solver in config.solvers:
                cap = config.cap(solver)
                try:
                    if config.warmup and (solver, k) not in warmed and (cap is None or k <= cap):
                        solve(solver, m, max_size=None)
                        warmed.add((solver, k))
                    rec = run_trial(solver, m, seed=seed, trial=trial, cap=cap)
                except AssignmentError as exc:
                    log.warning("%s failed on k=%d trial=%d: %s", solver, k, trial, exc)
                    rec = BenchRecord.marker(solver, k, seed, trial, "error", str(exc))
                records.append(rec)
    records.sort(key=lambda r: (r.k, r.trial, r.solver))
    return records


def emit_csv(records) -> bytes:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for rec in records:
        buf.write(rec.csv_row() + "\n")
    return buf.getvalue().encode("ascii")


def median_elapsed(records) -> dict:
    """``{solver: {k: median elapsed_ns}}`` over successful rows."""
    samples: dict = {}
    for rec in records:
        if rec.ok:
            samples.setdefault(rec.solver, {}).setdefault(rec.k, []).append(rec.elapsed_ns)
    return {s: {k: statistics.median(v) for k, v in sorted(by_k.items())}
            for s, by_k in samples.items()}
