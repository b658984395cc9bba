"""Process-level knobs: the enumeration size guard and the numba switch."""
from __future__ import annotations

import contextvars
import os
from contextlib import contextmanager

DEFAULT_MAX_FRONTIER = 10**6

_max_frontier: contextvars.ContextVar[int] = contextvars.ContextVar(
    "toposhull_max_frontier", default=DEFAULT_MAX_FRONTIER
)


def _numba_requested() -> bool:
    flag = os.environ.get("TOPOSHULL_DISABLE_NUMBA", "").strip().lower()
    return flag in ("", "0", "false", "no")


def _numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USE_NUMBA = _numba_requested() and _numba_available()


def max_frontier() -> int:
    return _max_frontier.get()


@contextmanager
def size_guard(limit: int):
    """Temporarily change the candidate limit for every enumeration."""
    if limit < 1:
        raise ValueError("size guard must be positive")
    token = _max_frontier.set(int(limit))
    try:
        yield
    finally:
        _max_frontier.reset(token)
