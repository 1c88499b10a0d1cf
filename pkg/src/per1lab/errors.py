"""Exception types shared across the package."""


class Per1LabError(Exception):
    """Base class for all package-specific errors."""


class NumericalError(Per1LabError):
    """A computation failed to certify its result (convergence, budget)."""


class ConvergenceError(NumericalError):
    """Iteration budget exhausted or residual above tolerance.

    Carries the best estimate and its measured residual so callers can
    inspect how close the computation got.
    """

    def __init__(self, message, best=None, residual=None, iterations=None):
        super().__init__(message)
        self.best = best
        self.residual = residual
        self.iterations = iterations


class BasinError(NumericalError):
    """The point is not in the parabolic basin (orbit escaped)."""


class TransitError(NumericalError):
    """Perturbed orbit escaped before reaching the reference annulus."""


class CapturedError(NumericalError):
    """Perturbed orbit was captured (or budget ran out) before transiting."""
