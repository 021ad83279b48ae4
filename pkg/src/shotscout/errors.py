"""Exception types shared by all engine modules.

Every error the engine raises deliberately is an EngineError subclass so the
service layer can map it to a structured JSON error and an HTTP status.
"""


class EngineError(Exception):
    """Base class for all engine errors."""

    code = "internal"
    http_status = 500


class InvalidArgument(EngineError):
    """A caller-supplied value violates an operation precondition."""

    code = "invalid_argument"
    http_status = 400


class NotFound(EngineError):
    """A referenced video, shot, or history entry does not exist."""

    code = "not_found"
    http_status = 404


class ParseError(InvalidArgument):
    """Query string rejected by the parser; offset is a byte offset into the query."""

    code = "parse_error"

    def __init__(self, message: str, offset: int):
        super().__init__(message)
        self.offset = offset


class SimilarityUndefined(InvalidArgument):
    """Cosine similarity requested for a zero vector."""

    code = "undefined_similarity"
