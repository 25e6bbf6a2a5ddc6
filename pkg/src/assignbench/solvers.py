"""Name-based access to every solver, with per-solver size caps."""

from __future__ import annotations

import os

from .branch_bound import Strategy, solve_bnb
from .brute import solve_brute_force
from .hungarian import solve_hungarian
from .model import CostMatrix, SolveReport

SOLVER_NAMES = ("brute", "hungarian", "bnb_fifo", "bnb_lifo", "bnb_least", "bnb_astar")

BNB_STRATEGIES = {
    "bnb_fifo": Strategy.FIFO,
    "bnb_lifo": Strategy.LIFO,
    "bnb_least": Strategy.LEAST_COST,
    "bnb_astar": Strategy.A_STAR,
}

# None means unbounded.
DEFAULT_SOLVER_CAPS = {"brute": 12, "bnb_fifo": 12, "bnb_lifo": 12}

CAPS_ENV_VAR = "ASSIGNBENCH_CAPS"


def caps_with_env_overrides(defaults: dict, environ=None) -> dict:
    """Apply ``ASSIGNBENCH_CAPS`` (e.g. ``"brute=13,bnb_fifo=none"``) to ``defaults``."""
    environ = os.environ if environ is None else environ
    caps = dict(defaults)
    text = environ.get(CAPS_ENV_VAR, "").strip()
    if not text:
        return caps
    for item in text.split(","):
        name, sep, value = item.partition("=")
        name, value = name.strip(), value.strip().lower()
        if not sep or name not in SOLVER_NAMES:
            raise ValueError(f"bad {CAPS_ENV_VAR} entry {item!r}")
        caps[name] = None if value in ("none", "") else int(value)
    return caps


def solve(name: str, m: CostMatrix, *, max_size=None) -> SolveReport:
    """Run solver ``name``; ``max_size`` caps K for the capped solvers only."""
    if name == "brute":
        return solve_brute_force(m, max_size=max_size)
    if name == "hungarian":
        return solve_hungarian(m)
    try:
        strategy = BNB_STRATEGIES[name]
    except KeyError:
        raise ValueError(f"unknown solver {name!r}; choose from {', '.join(SOLVER_NAMES)}") from None
    return solve_bnb(m, strategy, max_size=max_size)
