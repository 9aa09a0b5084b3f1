"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the documented domain of an operation."""


class PoleError(ValueError):
    """A Gamma-function argument sits on a pole (non-positive real integer)."""


class ConsistencyError(ArithmeticError):
    """An internal quantity drifted further from its analytic range than
    floating-point noise can explain; indicates an implementation bug."""


class SingularPointError(ValueError):
    """A closed-form expression was requested at a point where it divides
    by a vanishing radical or coherence."""


class EvaluationError(ArithmeticError):
    """A numerical evaluation produced a non-finite intermediate."""


class StateConstructionError(ValueError):
    """A density operator failed positivity, hermiticity or trace checks."""
