"""Exact solvers for the balanced assignment problem and a benchmark harness."""

from .bench import BenchConfig, BenchRecord, emit_csv, gen_instance, run_suite, run_trial
from .branch_bound import SearchNode, Strategy, expand, lower_bound, solve_bnb, tree_stats_check
from .brute import solve_brute_force
from .hungarian import (
    LineCover,
    ReducedState,
    adjust_uncovered,
    min_line_cover,
    reduce_cols,
    reduce_rows,
    solve_hungarian,
    verify_certificate,
)
from .matrixfile import parse_matrix, serialize_matrix
from .model import (
    Assignment,
    CostMatrix,
    DualCertificate,
    ExploredTreeStats,
    SolveReport,
    assignment_cost,
    new_cost_matrix,
    permutations,
    validate_assignment,
)
from .plot import emit_svg_plot
from .solvers import SOLVER_NAMES, solve

__version__ = "0.1.0"
