"""Runtime budgets and environment-variable configuration.

All hard caps are explicit and overridable, either per call, via CLI
flags, or via environment variables with the ``LINNIK_`` prefix:

    LINNIK_BUDGET_ENUM    max d accepted by lattice enumeration (default 10**6)
    LINNIK_BUDGET_PAIRS   max pairwise comparisons in exhaustive scans (10**8)
    LINNIK_BUDGET_PATHS   max non-backtracking paths enumerated (10**8)
    LINNIK_BUDGET_DENSE   max vertex count for dense eigensolves (6000)
    LINNIK_THREADS        worker cap for parallel sections (default 1)

Exceeding a budget raises :class:`linnik.errors.BudgetError`; it is an
explicit error, never a silent truncation.
"""

import os
from dataclasses import dataclass

DEFAULT_ENUM_CAP = 10**6
DEFAULT_PAIR_BUDGET = 10**8
DEFAULT_PATH_BUDGET = 10**8
DEFAULT_DENSE_CAP = 6000


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    return int(raw)


@dataclass(frozen=True)
class Budgets:
    """Resolved resource limits for one run."""

    enum_cap: int = DEFAULT_ENUM_CAP
    pair_budget: int = DEFAULT_PAIR_BUDGET
    path_budget: int = DEFAULT_PATH_BUDGET
    dense_cap: int = DEFAULT_DENSE_CAP
    threads: int = 1

    @classmethod
    def from_env(cls, **overrides):
        values = dict(
            enum_cap=_env_int("LINNIK_BUDGET_ENUM", DEFAULT_ENUM_CAP),
            pair_budget=_env_int("LINNIK_BUDGET_PAIRS", DEFAULT_PAIR_BUDGET),
            path_budget=_env_int("LINNIK_BUDGET_PATHS", DEFAULT_PATH_BUDGET),
            dense_cap=_env_int("LINNIK_BUDGET_DENSE", DEFAULT_DENSE_CAP),
            threads=_env_int("LINNIK_THREADS", 1),
        )
        for key, val in overrides.items():
            if val is not None:
                values[key] = val
        return cls(**values)


def default_budgets():
    return Budgets.from_env()
