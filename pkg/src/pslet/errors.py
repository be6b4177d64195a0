"""Exception hierarchy shared by the solver stages."""


class PsletError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PsletError, ValueError):
    """An argument lies outside the domain of the operation (e.g. r <= 0)."""


class SubcriticalCouplingError(PsletError, ValueError):
    """Coulomb couplings make the shifted angular momentum complex."""


class BranchError(PsletError, ArithmeticError):
    """A square root that must be real has a negative radicand."""


class NoRootError(PsletError, ArithmeticError):
    """A bracketing scan found no sign change."""


class MultipleRootError(PsletError, ArithmeticError):
    def __init__(self, message, roots):
        super().__init__(message)
        self.roots = roots


class SingularSystemError(PsletError, ArithmeticError):
    def __init__(self, message, power):
        super().__init__(message)
        self.power = power


class ResidualError(PsletError, ArithmeticError):
    """An order of the hierarchy left a residual above tolerance."""


class DependencyError(PsletError, ValueError):
    """A lower-order energy coefficient needed at this order is missing."""


class RangeError(PsletError, IndexError):
    """Requested more corrections than the series carries."""


class DegenerateDenominatorError(PsletError, ArithmeticError):
    """The Hankel system of a Pade approximant is singular."""


class StabilizationError(PsletError, ArithmeticError):
    """A partial-sum sequence never settled within the available orders."""


class ShootingError(PsletError, ArithmeticError):
    """The shooting integrator could not isolate the requested eigenvalue."""


class ConfigError(PsletError, ValueError):
    """A run configuration failed validation."""

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.message = message
        self.field = field
