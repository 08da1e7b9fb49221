"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class PolarKempeError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PolarKempeError, ValueError):
    """An argument is outside the domain of the operation."""


class UnknownEdge(PolarKempeError, KeyError):
    """The requested edge does not exist in the host graph."""


class NoSuchColouring(DomainError):
    """No colouring with the requested shape exists."""


class StaleChain(DomainError):
    """A Kempe chain is not a component of the colouring it is applied to."""


class BudgetExceeded(PolarKempeError, RuntimeError):
    """A state space is larger than the configured node budget."""

    def __init__(self, count: int, budget: int):
        super().__init__(f"state space has {count} nodes, budget is {budget}")
        self.count = count
        self.budget = budget


class NotEquivalent(PolarKempeError):
    """Two colourings lie in different Kempe classes."""

    def __init__(self, d_first, d_second):
        super().__init__(
            f"colourings are not Kempe equivalent (d-values {d_first} and {d_second})"
        )
        self.d_values = (d_first, d_second)


class InvariantViolation(PolarKempeError, AssertionError):
    """An internal consistency check failed; indicates a bug or a false claim."""
