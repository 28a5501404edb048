"""Work-budget defaults shared by the solvers and the CLI."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 2_000_000


def default_budget() -> int:
    """Budget taken from BFOML_BUDGET when set, else the built-in default."""
    raw = os.environ.get("BFOML_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"BFOML_BUDGET must be an integer, got {raw!r}") from exc
