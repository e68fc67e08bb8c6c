"""Caps for exhaustive (powerset-sized) scans.

A scan over all events costs 2^N, a scan over event triples 8^N, so the
checkers refuse to run above a small outcome count.  The environment
variable IPROB_MAX_EXHAUSTIVE overrides both caps.
"""

import os

from .errors import BudgetExceededError

ENV_VAR = "IPROB_MAX_EXHAUSTIVE"

EVENT_SCAN_CAP = 16
FAMILY_SCAN_CAP = 12
TRIPLE_SCAN_CAP = 12


def exhaustive_cap(default: int) -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise BudgetExceededError(
            f"{ENV_VAR} must be an integer, got {raw!r}"
        ) from None


def check_budget(n_outcomes: int, default_cap: int, operation: str) -> None:
    cap = exhaustive_cap(default_cap)
    if n_outcomes > cap:
        raise BudgetExceededError(
            f"{operation} is exhaustive and capped at {cap} outcomes; "
            f"got a space with {n_outcomes}"
        )
