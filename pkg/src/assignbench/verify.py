"""Cross-checks every solver against the brute-force oracle on one instance."""

from __future__ import annotations

from dataclasses import dataclass

from .branch_bound import Strategy, solve_bnb, tree_stats_check
from .brute import best_completion
from .errors import AssignmentError
from .hungarian import verify_certificate
from .model import CostMatrix, assignment_cost
from .solvers import BNB_STRATEGIES, SOLVER_NAMES, solve

SPOT_CHECKS = 25
SPOT_CHECK_MAX_REMAINING = 8


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def verify_instance(m: CostMatrix, caps: dict) -> list[CheckResult]:
    """Run all solvers on ``m`` and check them against each other.

    Cap violations and overflow propagate as exceptions (operational
    failures); everything else becomes a CheckResult.
    """
    reports = {name: solve(name, m, max_size=caps.get(name)) for name in SOLVER_NAMES}
    oracle = reports["brute"].optimal_cost
    checks = []

    for name, rep in reports.items():
        try:
            recomputed = assignment_cost(m, rep.assignment)
            ok = recomputed == rep.optimal_cost
            detail = f"{name}: cost {rep.optimal_cost}, assignment sums to {recomputed}"
        except AssignmentError as exc:
            ok, detail = False, f"{name}: {exc}"
        checks.append(CheckResult(f"report consistency [{name}]", ok, detail))

    costs = {name: rep.optimal_cost for name, rep in reports.items()}
    agree = all(c == oracle for c in costs.values())
    checks.append(CheckResult("costs agree with brute force", agree,
                              ", ".join(f"{n}={c}" for n, c in costs.items())))

    violation = verify_certificate(m, reports["hungarian"])
    checks.append(CheckResult("hungarian certificate", violation is None,
                              "u + v <= c, tight on assignment, sum = cost" if violation is None
                              else violation.message))

    for name in BNB_STRATEGIES:
        stats = reports[name].tree_stats
        bad = tree_stats_check(stats)
        checks.append(CheckResult(
            f"tree edges = nodes - 1 [{name}]", bad is None,
            f"{stats.nodes_generated} nodes, {stats.edges_generated} edges" if bad is None else bad.message))

    checks.append(_admissibility_spot_check(m, oracle))
    return checks


def _admissibility_spot_check(m: CostMatrix, optimum: int) -> CheckResult:
    generated = []
    solve_bnb(m, Strategy.A_STAR, visitor=lambda ev, node: generated.append(node) if ev == "generate" else None)
    k = m.size
    eligible = [n for n in generated if n.depth == 0 or k - n.depth <= SPOT_CHECK_MAX_REMAINING]
    step = max(1, len(eligible) // SPOT_CHECKS)
    sample = eligible[::step][:SPOT_CHECKS]
    for node in sample:
        best = optimum if node.depth == 0 else best_completion(m, node.partial_mapping)
        if node.f_bound > best:
            return CheckResult("A* bound admissible (spot check)", False,
                               f"node {node.partial_mapping}: g + h = {node.f_bound} > best completion {best}")
    return CheckResult("A* bound admissible (spot check)", True, f"{len(sample)} nodes checked")
