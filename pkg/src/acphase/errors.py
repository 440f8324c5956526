"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: ConfigurationError -> 3,
QuadratureError -> 4, oracle-tolerance violations -> 2.
"""


class AcphaseError(Exception):
    """Base class for all package errors."""


class ConfigurationError(AcphaseError):
    """Bad input: unknown dimension, missing parameter, schema violation."""


class DomainError(AcphaseError):
    """Input outside the physical domain (negative flux, point outside guide, ...)."""


class QuadratureError(AcphaseError):
    """Adaptive quadrature failed to converge.

    Carries the offending segment label and the achieved error estimate.
    """

    def __init__(self, message, segment=None, error_estimate=None):
        super().__init__(message)
        self.segment = segment
        self.error_estimate = error_estimate


class ModelViolationError(AcphaseError):
    """phi(t0) is not of the two-coefficient sinusoidal form.

    Signals a field/loop combination outside the monochromatic assumption.
    """
