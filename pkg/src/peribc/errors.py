"""Exception hierarchy shared by all modules."""


class PeribcError(Exception):
    """Base class for every error raised by the package."""


class DomainError(PeribcError, ValueError):
    """A point or parameter lies outside the domain where a formula is defined."""


class ConfigurationError(PeribcError, ValueError):
    """Invalid problem, grid or method configuration."""


class UnsupportedConfigurationError(ConfigurationError):
    """The configuration is well formed but the method does not support it."""


class NumericalError(PeribcError, ArithmeticError):
    """Base class for failures inside the linear solvers."""


class SingularMatrixError(NumericalError):
    def __init__(self, row, pivot=None):
        self.row = row
        self.pivot = pivot
        msg = f"matrix is singular to working precision at row {row}"
        if pivot is not None:
            msg += f" (pivot {pivot:.3e})"
        super().__init__(msg)


class SizeGuardError(NumericalError):
    """Refusal to expand a system that is too large for the dense oracle."""
