"""Exception types shared across the package."""


class PVZetaError(Exception):
    """Base class for all package errors."""


class PoleError(PVZetaError):
    """A complex parameter landed inside the guard band around a pole."""


class AccuracyError(PVZetaError):
    """A quadrature error estimate exceeded its stated budget."""


class NonConvergence(PVZetaError):
    """An adaptive scheme exhausted its subdivision budget."""


class DomainError(PVZetaError):
    """Inputs outside the supported parameter domain."""


class ConfigError(PVZetaError):
    """Invalid CLI or config-file input."""
