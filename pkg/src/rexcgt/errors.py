"""Exception types shared across the package, plus a node budget for exhaustive searches."""
from __future__ import annotations

import contextlib
import contextvars
from typing import Iterator


class InputError(ValueError):
    """Malformed input: bad text, unknown names, mismatched posets."""


class PreconditionError(ValueError):
    """An operation was asked to run on a game outside its sound domain."""


class BudgetExceeded(RuntimeError):
    """An exhaustive search ran past its node budget."""


DEFAULT_BUDGET = 10**7


class Budget:
    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = limit
        self.spent = 0

    def charge(self, n: int = 1) -> None:
        self.spent += n
        if self.spent > self.limit:
            raise BudgetExceeded(f"node budget of {self.limit} exhausted")


_active: contextvars.ContextVar[Budget | None] = contextvars.ContextVar("rexcgt_budget", default=None)


@contextlib.contextmanager
def budget(limit: int = DEFAULT_BUDGET) -> Iterator[Budget]:
    """Cap the number of fresh nodes expanded by searches run inside the block."""
    b = Budget(limit)
    token = _active.set(b)
    try:
        yield b
    finally:
        _active.reset(token)


def charge(n: int = 1) -> None:
    b = _active.get()
    if b is not None:
        b.charge(n)
