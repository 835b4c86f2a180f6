"""Exception taxonomy shared across the package."""


class RehabEvalError(Exception):
    """Base class for every package-specific error."""


class NotFoundError(RehabEvalError):
    """A required file or directory does not exist."""


class ParseError(RehabEvalError):
    """Malformed numeric content in a data file; carries the location."""

    def __init__(self, message: str, path=None, line: int | None = None):
        loc = ""
        if path is not None:
            loc = f" [{path}" + (f":{line}" if line is not None else "") + "]"
        super().__init__(message + loc)
        self.path = path
        self.line = line


class SchemaError(RehabEvalError):
    """File content disagrees with the declared schema (column counts, versions)."""


class RangeError(RehabEvalError):
    """An annotation lies outside the bounds of its recording."""


class CapacityError(RehabEvalError):
    """Not enough samples to satisfy a requested split."""


class DegenerateGeometryError(RehabEvalError):
    """Zero-length segment or collinear plane points in a geometric primitive."""

    def __init__(self, message: str, frame_index: int | None = None):
        if frame_index is not None:
            message = f"{message} (frame {frame_index})"
        super().__init__(message)
        self.frame_index = frame_index


class ConfigError(RehabEvalError):
    """Invalid configuration: unknown names, bad arities, inconsistent values."""


class StateError(RehabEvalError):
    """An operation ran before its prerequisite produced the needed state."""


class TransportError(RehabEvalError):
    """All transport retries exhausted without a usable response."""


class EndpointError(RehabEvalError):
    """Endpoint replied with a non-retryable failure status."""

    def __init__(self, message: str, status: int | None = None, body_excerpt: str = ""):
        super().__init__(message)
        self.status = status
        self.body_excerpt = body_excerpt


class OracleError(RehabEvalError):
    """The offline oracle could not read a rendered prompt (upstream prompt bug)."""


class EmptyInputError(RehabEvalError):
    """A metric was asked to score an empty collection."""


class UndefinedMetricError(RehabEvalError):
    """The metric is undefined for this input (e.g. single-class AUC)."""
