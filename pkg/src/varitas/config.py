"""Caps and budgets.

All limits are configuration, not constants: explicit arguments win, then
environment variables, then the defaults below.
"""

from __future__ import annotations

import os

from .errors import BudgetError

ENV_CAP_ORDER = "VARITAS_CAP_ORDER"
ENV_CAP_BUDGET = "VARITAS_CAP_BUDGET"

DEFAULT_ORDER_CAP = 5040        # group construction (permutation closure, products)
DEFAULT_LATTICE_CAP = 60        # subgroup-lattice enumeration
DEFAULT_EVAL_BUDGET = 10**8     # elementary products per word-scan operation
DEFAULT_ORACLE_POSITIONS = 4096  # |A|^d cap for the Var(A) oracle
DEFAULT_ORACLE_NODES = 200_000   # BFS node cap for the Var(A) oracle


def order_cap(explicit: int | None = None) -> int:
    if explicit is not None:
        return int(explicit)
    return int(os.environ.get(ENV_CAP_ORDER, DEFAULT_ORDER_CAP))


def lattice_cap(explicit: int | None = None) -> int:
    if explicit is not None:
        return int(explicit)
    return DEFAULT_LATTICE_CAP


def eval_budget(explicit: int | None = None) -> int:
    if explicit is not None:
        return int(explicit)
    return int(os.environ.get(ENV_CAP_BUDGET, DEFAULT_EVAL_BUDGET))


class Budget:
    """Counts elementary products actually consumed by a scan.

    ``estimate`` is the worst-case requirement, reported when the budget
    runs out so callers know what limit would have sufficed.
    """

    def __init__(self, limit: int, estimate: int | None = None):
        self.limit = int(limit)
        self.estimate = estimate
        self.used = 0

    def charge(self, amount: int) -> None:
        self.used += int(amount)
        if self.used > self.limit:
            required = self.estimate if self.estimate is not None else self.used
            raise BudgetError(
                f"evaluation budget exceeded: limit {self.limit}, "
                f"required about {required}",
                required=required,
            )
