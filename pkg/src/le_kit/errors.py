"""Exception types shared across the package."""


class LaneEmdenKitError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LaneEmdenKitError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(LaneEmdenKitError, RuntimeError):
    """An iterative scheme failed to contract within its iteration cap."""


class NotCriticalError(DomainError):
    """The space dimension admits no integer critical exponent."""


class UnsupportedCaseError(DomainError):
    """The requested (d, p) case is outside the implemented scope."""


class NoRealSolutionError(DomainError):
    """No real solution exists for the requested constant (d=4, C < -1)."""


class UnsupportedBranchError(DomainError):
    """The requested branch is not real-valued (d=6 middle band)."""


class PoleError(LaneEmdenKitError, ArithmeticError):
    """Evaluation point is within tolerance of a pole of the solution."""


class BranchEndError(LaneEmdenKitError, ArithmeticError):
    """A square-root radicand went negative beyond tolerance."""


class BlowUpDetected(LaneEmdenKitError, RuntimeError):
    """The numerical trajectory reached the blow-up guard (movable singularity)."""


class StepLimitExceeded(LaneEmdenKitError, RuntimeError):
    """The integrator exhausted its step budget or its step size underflowed."""


class WindowEmptyError(LaneEmdenKitError, ValueError):
    """No pole-free subwindow with enough sample points exists."""
