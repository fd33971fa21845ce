"""Exception hierarchy shared by the estimator modules."""


class EstimatorError(Exception):
    """Base class for all estimator errors."""


class ConfigurationError(EstimatorError, ValueError):
    """A machine, kind or profile definition is inconsistent or incomplete."""


class DomainError(EstimatorError, ValueError):
    """A numeric argument lies outside the model's domain (e.g. k <= 1)."""


class InputError(EstimatorError, ValueError):
    """Malformed call input, such as an unsorted grid."""


class UnsupportedError(EstimatorError):
    """The requested quantity has no closed form in this model."""
