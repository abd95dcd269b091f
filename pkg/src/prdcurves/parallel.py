"""Thread-cap handling for the internally parallel pieces (ensemble
members, k-means restarts)."""

from __future__ import annotations

import os

from .errors import InputError


def thread_cap() -> int:
    """Worker cap from PRD_THREADS; defaults to the available core count."""
    raw = os.environ.get("PRD_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"PRD_THREADS must be a positive integer, got {raw!r}")
    if n < 1:
        raise InputError(f"PRD_THREADS must be a positive integer, got {raw!r}")
    return n
