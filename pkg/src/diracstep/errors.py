"""Exception types shared across the package.

The CLI maps these onto process exit codes: DomainError (and subclasses)
exit 2, ConvergenceError exit 3, I/O failures exit 4.
"""


class DomainError(ValueError):
    """Physical inputs outside the supported domain (e.g. E <= m, V < 0)."""


class BoundaryError(DomainError):
    """Inputs sitting exactly on a regime boundary (V = E - m or V = E + m).

    The matching ratio is singular there; callers must perturb the input.
    """


class NotApplicableError(DomainError):
    """Operation undefined in the current regime (e.g. gamma in evanescence)."""


class StaticFieldError(DomainError):
    """Orbit requested for a static velocity field (|A| = 1, omega = 0)."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to reach its tolerance."""
