"""Command-line entry point: ``assignbench solve|bench|verify``.

Exit codes: 0 success, 1 usage or parse error, 2 operational error
(size cap, overflow, I/O), 3 verification failure.

``ASSIGNBENCH_CAPS`` (e.g. ``brute=13,bnb_fifo=none``) overrides the
default size caps of both the solvers and the benchmark.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bench import DEFAULT_BENCH_CAPS, BenchConfig, derive_seed, emit_csv, gen_instance, run_suite
from .errors import AssignmentError, InsufficientDataError, MatrixSyntaxError, NonIntegerCostError
from .errors import NegativeCostError, NonSquareError
from .matrixfile import input_digest, parse_matrix
from .plot import emit_svg_plot
from .solvers import DEFAULT_SOLVER_CAPS, SOLVER_NAMES, caps_with_env_overrides, solve
from .verify import verify_instance

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_OPERATIONAL = 2
EXIT_VERIFY_FAILED = 3

PARSE_ERRORS = (MatrixSyntaxError, NonSquareError, NegativeCostError, NonIntegerCostError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _err(msg: str) -> None:
    print(f"assignbench: {msg}", file=sys.stderr)


def parse_sizes(text: str) -> list[int]:
    """``"3..10"`` (inclusive) or ``"3,5,8"`` or ``"4"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"invalid --sizes {text!r}; use LO..HI or a comma list") from None


def parse_cost_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"invalid --cost-range {text!r}; use LO..HI") from None


def _load_caps(defaults):
    try:
        return caps_with_env_overrides(defaults)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read_matrix(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        _err(f"cannot read {path}: {exc.strerror or exc}")
        return None, EXIT_OPERATIONAL
    try:
        return parse_matrix(data), EXIT_OK
    except PARSE_ERRORS as exc:
        _err(f"{path}: {exc}")
        return None, EXIT_USAGE


def cmd_solve(args) -> int:
    if args.solver not in SOLVER_NAMES:
        _err(f"unknown solver {args.solver!r}")
        _err(f"usage hint: --solver one of {', '.join(SOLVER_NAMES)}")
        return EXIT_OPERATIONAL
    m, status = _read_matrix(args.path)
    if m is None:
        return status
    caps = _load_caps(DEFAULT_SOLVER_CAPS)
    try:
        report = solve(args.solver, m, max_size=caps.get(args.solver))
    except AssignmentError as exc:
        _err(str(exc))
        return EXIT_OPERATIONAL
    if args.json:
        payload = {"solver": args.solver, "input_digest": input_digest(m), **report.to_dict()}
        print(json.dumps(payload, sort_keys=True))
        return EXIT_OK
    print(f"solver: {args.solver}")
    print(f"optimal cost: {report.optimal_cost}")
    for worker, job in report.assignment.pairs():
        print(f"worker {worker} -> job {job}")
    print(f"nodes expanded: {report.nodes_expanded}")
    print(f"edges generated: {report.edges_generated}")
    if report.tree_stats is not None:
        print(f"nodes generated: {report.tree_stats.nodes_generated}")
        print(f"max frontier: {report.tree_stats.max_frontier}")
    if report.certificate is not None:
        print(f"row potentials: {list(report.certificate.row_potentials)}")
        print(f"col potentials: {list(report.certificate.col_potentials)}")
    print(f"elapsed: {report.elapsed_ns} ns")
    return EXIT_OK


def _write(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def cmd_bench(args) -> int:
    sizes = parse_sizes(args.sizes)
    solvers = [s.strip() for s in args.solvers.split(",") if s.strip()]
    unknown = [s for s in solvers if s not in SOLVER_NAMES]
    if unknown:
        raise UsageError(f"unknown solvers {unknown}; choose from {', '.join(SOLVER_NAMES)}")
    try:
        config = BenchConfig(
            sizes=sizes,
            trials_per_size=args.trials,
            seed=args.seed,
            cost_range=parse_cost_range(args.cost_range),
            solvers=tuple(solvers),
            per_solver_caps=_load_caps(DEFAULT_BENCH_CAPS),
            warmup=not args.no_warmup,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.svg and len(config.sizes) < 2:
        _err("InsufficientData: the plot needs at least two sizes")
        return EXIT_USAGE
    records = run_suite(config)
    outputs = []
    if args.csv or not args.svg:
        outputs.append((args.csv or "-", emit_csv(records)))
    if args.svg:
        try:
            outputs.append((args.svg, emit_svg_plot(records)))
        except InsufficientDataError as exc:
            _err(f"InsufficientData: {exc}")
            return EXIT_USAGE
    try:
        for path, data in outputs:
            _write(path, data)
    except OSError as exc:
        _err(f"cannot write output: {exc}")
        return EXIT_OPERATIONAL
    skipped = sum(1 for r in records if r.status == "skipped")
    failed = sum(1 for r in records if r.status == "error")
    if skipped or failed:
        _err(f"{len(records)} records, {skipped} skipped by cap, {failed} failed")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.random is not None:
        if args.path is not None:
            raise UsageError("give either a matrix file or --random, not both")
        k, n, seed = args.random
        if k < 0 or n < 1 or seed < 0:
            raise UsageError("--random needs K >= 0, N >= 1, SEED >= 0")
        instances = [(f"random #{t + 1} (K={k})", gen_instance(k, derive_seed(seed, k, t)))
                     for t in range(n)]
    elif args.path is not None:
        m, status = _read_matrix(args.path)
        if m is None:
            return status
        instances = [(args.path, m)]
    else:
        raise UsageError("verify needs a matrix file or --random K N SEED")

    caps = _load_caps(DEFAULT_SOLVER_CAPS)
    failures = 0
    for label, m in instances:
        try:
            checks = verify_instance(m, caps)
        except AssignmentError as exc:
            _err(f"{label}: {exc}")
            return EXIT_OPERATIONAL
        for check in checks:
            failures += not check.passed
            print(f"{'PASS' if check.passed else 'FAIL'}  [{label}] {check.name}: {check.detail}")
    total = sum(1 for _ in instances)
    print(f"{total} instance(s) verified, {failures} failed check(s)")
    return EXIT_VERIFY_FAILED if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="assignbench", description="Balanced assignment solvers and benchmark.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one matrix file")
    p.add_argument("path")
    p.add_argument("--solver", default="hungarian", help=f"one of {', '.join(SOLVER_NAMES)}")
    p.add_argument("--json", action="store_true", help="print one JSON object")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="time solvers on seeded random instances")
    p.add_argument("--sizes", default="3..8", help="LO..HI or comma list")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--solvers", default=",".join(SOLVER_NAMES))
    p.add_argument("--cost-range", default="0..99", help="inclusive LO..HI")
    p.add_argument("--csv", help="CSV output path ('-' for stdout)")
    p.add_argument("--svg", help="SVG plot output path")
    p.add_argument("--no-warmup", action="store_true", help="skip the discarded warm-up solve")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="check all solvers against brute force")
    p.add_argument("path", nargs="?")
    p.add_argument("--random", nargs=3, type=int, metavar=("K", "N", "SEED"))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
