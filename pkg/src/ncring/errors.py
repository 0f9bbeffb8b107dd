"""Exception hierarchy shared by all ncring modules."""


class NCRingError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(NCRingError):
    """A physical parameter or configuration value violates its precondition."""


class ConstraintUnsatisfiableError(NCRingError):
    """The deformation constraint cannot be solved for the requested inputs."""


class FluxDomainError(NCRingError):
    """A flux value lies outside the domain where the requested quantity is defined."""


class InvalidGridError(NCRingError):
    """A flux grid violates ordering, positivity, or range requirements."""


class MeasurementFormatError(NCRingError):
    """A measurement file cannot be parsed; carries the offending line number."""

    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class InsufficientDataError(NCRingError):
    """Too few admissible points for a fit or estimate."""


class EstimationFailedError(NCRingError):
    """No usable fit was available to estimate the requested quantity."""


class PipelineOrderError(NCRingError):
    """An analysis stage was invoked before the inputs it depends on exist."""
