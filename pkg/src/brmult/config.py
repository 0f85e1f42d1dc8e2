"""Run-wide settings (reduction budget, sample cap, seed).

The shell sets these from flags/environment; library callers can use
:func:`settings_override` as a context manager.
"""
from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace

DEFAULT_BUDGET = 1_000_000


@dataclass(frozen=True)
class Settings:
    budget: int = DEFAULT_BUDGET
    nmax: int | None = None  # None means 12 + s
    seed: int = 0
    verbose: bool = False


_current: contextvars.ContextVar[Settings] = contextvars.ContextVar("brim_settings", default=Settings())


def current() -> Settings:
    return _current.get()


@contextlib.contextmanager
def settings_override(**changes):
    token = _current.set(replace(_current.get(), **changes))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
