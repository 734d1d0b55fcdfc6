"""Search budgets shared by every bounded search in the package."""

import os
from contextlib import contextmanager

from .errors import BudgetExceededError

DEFAULT_SEARCH_BUDGET = 10**7
DEFAULT_GROUP_BUDGET = 64
DEFAULT_FIXTURE_BUDGET = 12

_override = []


def search_budget():
    """Current search budget: innermost ``budget_scope`` > ``SFTG_BUDGET`` > default."""
    if _override:
        return _override[-1]
    env = os.environ.get("SFTG_BUDGET")
    if env:
        return int(env)
    return DEFAULT_SEARCH_BUDGET


@contextmanager
def budget_scope(value):
    _override.append(int(value))
    try:
        yield
    finally:
        _override.pop()


def check_budget(what, size):
    """Raise :class:`BudgetExceededError` if ``size`` exceeds the current search budget."""
    budget = search_budget()
    if size > budget:
        raise BudgetExceededError(what, size, budget)


class Counter:
    """Counts search steps and raises once the budget is exhausted."""

    def __init__(self, what, budget=None):
        self.what = what
        self.budget = search_budget() if budget is None else budget
        self.count = 0

    def tick(self, n=1):
        self.count += n
        if self.count > self.budget:
            raise BudgetExceededError(self.what, self.count, self.budget)
