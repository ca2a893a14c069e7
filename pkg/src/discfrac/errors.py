"""Exception types shared across the package."""


class DiscFracError(Exception):
    """Base class for all package errors."""


class DomainError(DiscFracError, ValueError):
    """An argument lies outside the domain of an operator."""


class PoleError(DomainError):
    """A gamma argument sits on a pole (0, -1, -2, ...)."""


class OrderError(DiscFracError, ValueError):
    """A fractional order is outside its admissible range."""


class RegressivityError(DiscFracError, ValueError):
    """1 + h*z vanishes, so the exponential is undefined."""


class ConfigError(DiscFracError, ValueError):
    """A problem is configured inconsistently for the requested operation."""


class HistoryError(DiscFracError, IndexError):
    """Backward differences need grid values before the left endpoint."""


class DivergenceError(DiscFracError, ValueError):
    """A transform series does not converge for the given z."""


class BudgetError(DiscFracError, RuntimeError):
    """A series or iteration exceeded its evaluation budget."""


class QuadratureError(DiscFracError, RuntimeError):
    """Quadrature did not reach the requested tolerance."""


class ParseError(DiscFracError, ValueError):
    """Malformed expression source.

    ``offset`` is the 0-based byte offset of the failure and ``expected``
    the set of token kinds that would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        exp = ", ".join(sorted(self.expected))
        full = f"{message} at offset {offset}"
        if exp:
            full += f" (expected one of: {exp})"
        super().__init__(full)


class EvalError(DiscFracError, ValueError):
    """Expression evaluation failed (unbound name, division by zero, ...)."""


class NoConvergence(DiscFracError, RuntimeError):
    """No Newton start converged to a root."""
