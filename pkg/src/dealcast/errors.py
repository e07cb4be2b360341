"""Exception types shared across the package."""


class DealcastError(Exception):
    """Base class for all package errors."""


class CorpusParseError(DealcastError):
    """A corpus record could not be parsed.

    Carries the zero-based record index so callers can point at the
    offending line of a JSON-lines file.
    """

    def __init__(self, record_index, message):
        self.record_index = record_index
        super().__init__(f"record {record_index}: {message}")


class DomainError(DealcastError, ValueError):
    """An argument is outside the documented domain of an operation."""


class ContractError(DealcastError):
    """Caller violated an interface contract (e.g. feature order mismatch)."""


class NumericError(DealcastError):
    """A numerical routine failed (singular system, overflow, ...)."""


class TrainingError(DealcastError):
    """Iterative training diverged; carries the failing iteration."""

    def __init__(self, iteration, message):
        self.iteration = iteration
        super().__init__(f"iteration {iteration}: {message}")
