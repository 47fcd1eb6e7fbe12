"""Exception hierarchy for the solvers."""


class QuinticError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateLeadingCoefficient(QuinticError, ValueError):
    pass


class DeflationResidualTooLarge(QuinticError, ValueError):
    def __init__(self, residual, tol):
        super().__init__(f"deflation residual {residual:.3e} exceeds tolerance {tol:.3e}")
        self.residual = residual
        self.tol = tol


class NoConvergence(QuinticError, RuntimeError):
    """The oracle iteration ran out of budget.

    The best iterate and its worst residual are attached so callers can still
    inspect what was reached.
    """

    def __init__(self, roots, residual, iterations):
        super().__init__(
            f"no convergence after {iterations} iterations (max residual {residual:.3e})"
        )
        self.roots = roots
        self.residual = residual
        self.iterations = iterations


class CardinalityMismatch(QuinticError, ValueError):
    pass


class SeriesError(QuinticError, ArithmeticError):
    """A series could not be summed. ``partial`` holds the last partial sum."""

    def __init__(self, message, partial=None, terms_used=0):
        super().__init__(message)
        self.partial = partial
        self.terms_used = terms_used


class SeriesDiverged(SeriesError):
    pass


class ShellBudgetExhausted(SeriesError):
    pass


class TermBudgetExhausted(SeriesError):
    pass


class OutsideConvergenceDomain(SeriesError, ValueError):
    """Raised before summing when (A, B) is not strictly inside the domain."""


class DegenerateCoefficient(QuinticError, ValueError):
    pass


class DegenerateMap(QuinticError, ArithmeticError):
    pass


class ZeroConstantTerm(QuinticError, ValueError):
    pass


class ZeroLinearTerm(QuinticError, ValueError):
    pass


class NoPreimageWithinTolerance(QuinticError, ArithmeticError):
    def __init__(self, y, residuals, tol):
        super().__init__(
            f"neither preimage of y={y!r} solves the quintic "
            f"(residuals {residuals[0]:.3e}, {residuals[1]:.3e}; tol {tol:.3e})"
        )
        self.y = y
        self.residuals = residuals
        self.tol = tol


class ZeroSexticCoefficient(QuinticError, ValueError):
    pass
