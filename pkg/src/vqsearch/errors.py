"""Shared exception types."""


class InvalidGateError(ValueError):
    """Gate specification is malformed or out of range for the state."""


class ConfigError(ValueError):
    """Experiment configuration is inconsistent or unsupported."""


class ResourceLimitError(RuntimeError):
    """Requested size exceeds the guard rails (statevector / enumeration scale)."""


class NonFiniteObjectiveError(RuntimeError):
    """Objective returned NaN or inf; carries the evaluation trace gathered so far."""

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace
