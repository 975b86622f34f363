"""Exception taxonomy shared across the engine."""


class SensaError(Exception):
    """Base class for all engine errors."""


class UnsupportedDimensionError(SensaError):
    """Requested dimension exceeds the direction-number table."""


class MalformedPointError(SensaError):
    """A raw point does not have the expected dimension."""


class InsufficientDataError(SensaError):
    """An estimator was asked to run on an empty block list."""


class DegenerateDensityError(SensaError):
    """A density with zero total mass where positive mass is required."""


class ConfigError(SensaError):
    """Invalid campaign configuration."""


class CampaignStateError(SensaError):
    """An operation is not allowed in the campaign's current status."""


class ConcurrentRunError(CampaignStateError):
    """A batch was requested while another batch is executing."""


class IngestError(SensaError):
    """External blocks could not be merged (shape or duplicate row index)."""


class StateFormatError(SensaError):
    """A persisted state payload failed to parse or validate."""


class EvaluatorError(SensaError):
    """Base class for external-evaluator failures."""


class EvaluatorCrashedError(EvaluatorError):
    """The child process exited while requests were outstanding."""


class EvaluationTimeoutError(EvaluatorError):
    """No response arrived within the per-evaluation timeout."""


class ProtocolError(EvaluatorError):
    """The child produced a line that does not follow the wire protocol."""


class DivergenceError(SensaError):
    """ODE state became non-finite during integration."""

    def __init__(self, message: str, time_reached: float):
        super().__init__(message)
        self.time_reached = time_reached
