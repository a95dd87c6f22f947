"""Resource limits shared by the enumeration and iteration routines.

Operations that can blow up (root enumeration, PGL2 searches, iteration)
consult the active :class:`Budget` and fail loudly with
:class:`~multispec.errors.FieldTooLarge` or
:class:`~multispec.errors.BudgetExceeded` instead of running unbounded.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, field

from .errors import BudgetExceeded, FieldTooLarge


@dataclass
class Budget:
    enumeration: int = 10**6
    max_degree: int = 2000
    max_coeff_degree: int = 5000
    counters: dict = field(default_factory=dict)

    def count(self, name: str, amount: int = 1) -> None:
        self.counters[name] = self.counters.get(name, 0) + amount

    def check_enumeration(self, size: int, what: str) -> None:
        if size > self.enumeration:
            raise FieldTooLarge(
                f"{what}: {size} elements exceeds the enumeration budget {self.enumeration}"
            )

    def check_degree(self, degree: int, what: str) -> None:
        if degree > self.max_degree:
            raise BudgetExceeded(f"{what}: degree {degree} exceeds {self.max_degree}")

    def check_coeff_degree(self, degree: int, what: str) -> None:
        if degree > self.max_coeff_degree:
            raise BudgetExceeded(
                f"{what}: coefficient degree {degree} exceeds {self.max_coeff_degree}"
            )


_current: contextvars.ContextVar[Budget] = contextvars.ContextVar("multispec_budget")


def current() -> Budget:
    try:
        return _current.get()
    except LookupError:
        b = Budget()
        _current.set(b)
        return b


@contextlib.contextmanager
def using(budget: Budget):
    token = _current.set(budget)
    try:
        yield budget
    finally:
        _current.reset(token)
