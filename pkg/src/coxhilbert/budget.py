"""Resource caps for enumeration and linear algebra.

Defaults can be overridden through the environment:

``COXHILBERT_MAX_MONOMIALS``
    cap on the number of monomials enumerated in one step (default ``10**7``)
``COXHILBERT_MAX_RANK_ROWS``
    cap on the number of rows fed to one rank computation (default ``200000``)
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import BudgetExceeded

DEFAULT_MAX_MONOMIALS = 10**7
DEFAULT_MAX_RANK_ROWS = 200_000
DEFAULT_MAX_GOTZMANN_TERMS = 10**6
DEFAULT_MAX_BOX_POINTS = 10**6


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {raw!r}")
    return value


@dataclass(frozen=True)
class Budget:
    max_monomials: int = DEFAULT_MAX_MONOMIALS
    max_rank_rows: int = DEFAULT_MAX_RANK_ROWS
    max_box_points: int = DEFAULT_MAX_BOX_POINTS

    def check_monomials(self, count: int, what: str = "monomials") -> None:
        if count > self.max_monomials:
            raise BudgetExceeded(
                f"enumerating {count} {what} exceeds the cap of {self.max_monomials}"
            )

    def check_rows(self, count: int) -> None:
        if count > self.max_rank_rows:
            raise BudgetExceeded(
                f"rank computation with {count} rows exceeds the cap of {self.max_rank_rows}"
            )

    def check_box(self, count: int) -> None:
        if count > self.max_box_points:
            raise BudgetExceeded(
                f"box with {count} points exceeds the cap of {self.max_box_points}"
            )


def default_budget() -> Budget:
    """Budget built from the environment at call time."""
    return Budget(
        max_monomials=_env_int("COXHILBERT_MAX_MONOMIALS", DEFAULT_MAX_MONOMIALS),
        max_rank_rows=_env_int("COXHILBERT_MAX_RANK_ROWS", DEFAULT_MAX_RANK_ROWS),
        max_box_points=_env_int("COXHILBERT_MAX_BOX_POINTS", DEFAULT_MAX_BOX_POINTS),
    )


def resolve(budget: Budget | None) -> Budget:
    return default_budget() if budget is None else budget
