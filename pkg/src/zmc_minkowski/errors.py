"""Exception hierarchy shared by every module."""


class ZmcError(Exception):
    """Base class for package errors."""


class DegenerateError(ZmcError, ValueError):
    """A metric, normal or frame degenerates at the requested point."""


class DomainError(ZmcError, ValueError):
    """A point lies outside the declared parameter domain."""


class LightlikeCoordinateError(ZmcError, ZeroDivisionError):
    """Division by a non-invertible hypernumber (a zero or a null paracomplex number)."""


class StructureError(ZmcError, ValueError):
    """A shape operator does not admit the requested rotational structure."""


class QuadratureError(ZmcError, RuntimeError):
    """Adaptive quadrature failed to reach its tolerance."""


class FitError(ZmcError, ValueError):
    """Initial data are incompatible with the closed-form conformal factor."""


class JetMismatchError(ZmcError, AssertionError):
    """An analytic jet disagrees with its finite-difference reference."""


class ConfigError(ZmcError, ValueError):
    """Invalid user configuration (CLI targets, suites, grids)."""
