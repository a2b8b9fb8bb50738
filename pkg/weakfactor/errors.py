"""Exceptions raised by weakfactor."""


class WeakFactorError(Exception):
    """Base class for all weakfactor errors."""


class ParameterError(WeakFactorError, ValueError):
    """Raised when a parameter lies outside its domain."""


class ShapeError(WeakFactorError, ValueError):
    """Raised when array shapes are incompatible."""


class DegenerateInputError(WeakFactorError):
    """Raised when increments make a statistic undefined (e.g. zero realized variance)."""

    def __init__(self, message: str, component: int | None = None) -> None:
        super().__init__(message)
        self.component = component


class CapacityError(WeakFactorError):
    """Raised when a dense matrix would exceed the configured size cap."""


class ComputationError(WeakFactorError):
    """Raised when a numerical routine fails."""


class ReplicationError(WeakFactorError):
    """Raised when a Monte Carlo replication fails after its resample."""

    def __init__(self, message: str, replication_index: int) -> None:
        super().__init__(message)
        self.replication_index = replication_index


class ExperimentError(WeakFactorError):
    """Raised when too many replications of an experiment fail."""
