"""Shared exception types.

CLI exit-code mapping: InputError and friends -> 2, BudgetExhausted -> 3,
a clean "property is false" verdict is not an exception at all (exit 1).
"""


class InputError(ValueError):
    """Malformed input: bad vertex, wrong arity, duplicate edge, bad format."""


class PreconditionError(RuntimeError):
    """An operation's hypothesis does not hold for the given input."""


class InfeasibleError(PreconditionError):
    """A linear program or combinatorial construction has no solution."""


class BudgetExhausted(RuntimeError):
    """An exhaustive search ran out of node budget before deciding."""

    def __init__(self, message, nodes=None):
        super().__init__(message)
        self.nodes = nodes


class PhaseError(RuntimeError):
    """A multi-stage construction failed; `phase` names the failing stage."""

    def __init__(self, phase, message):
        super().__init__(f"[{phase}] {message}")
        self.phase = phase
