"""Exception hierarchy shared across the package."""


class OscBathError(Exception):
    """Base class for all errors raised by oscbath."""


class ValidationError(OscBathError, ValueError):
    """An input violates a documented invariant.

    Parameters
    ----------
    violations : list of str
        Human-readable descriptions of every violated invariant.
    """

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class DomainError(OscBathError, ValueError):
    """A function was evaluated outside its domain (e.g. lower half plane)."""


class NumericError(OscBathError, ArithmeticError):
    """A quantity is singular at the requested frequency."""


class ConvergenceError(OscBathError, RuntimeError):
    """Quadrature hit its subdivision or refinement limit before meeting tolerance.

    Attributes
    ----------
    diagnostics : IntegralDiagnostics or None
        State of the integrator at the point of failure.
    partial : list
        Results already computed when the failure happened (used by sweeps).
    """

    def __init__(self, message, diagnostics=None, partial=None):
        super().__init__(message)
        self.diagnostics = diagnostics
        self.partial = list(partial) if partial is not None else []
