"""Exception types shared across the package."""

from __future__ import annotations


class AriannaError(Exception):
    """Base class for every error raised by this package."""


class InvalidOrderError(AriannaError, ValueError):
    """An n-gram order outside the supported range, or missing from a model."""


class EmptyTextError(AriannaError, ValueError):
    """Text to score produced no word tokens."""


class MissingTrigramsError(AriannaError, ValueError):
    """Scoring needs order 3, but the model was built without it."""


class ModelFormatError(AriannaError, ValueError):
    """A model file that cannot be parsed.

    ``line_number`` is 1-based and points at the offending record when known.
    """

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class ModelVersionError(ModelFormatError):
    """A model file written by an unsupported format version."""


class CorpusError(AriannaError):
    """A corpus path that is missing or unreadable."""


class EncodingError(CorpusError):
    """Corpus bytes that are not valid UTF-8. Reports path and byte offset."""

    def __init__(self, path: str, offset: int):
        super().__init__(f"{path}: invalid UTF-8 at byte offset {offset}")
        self.path = path
        self.offset = offset


class EditError(AriannaError, ValueError):
    """An edit that cannot be applied: bad position or bad replacement word."""


class NothingToUndoError(AriannaError):
    """Undo was requested but no active edit remains."""


class SessionFormatError(AriannaError, ValueError):
    """A session document with missing or malformed fields."""


class ReplayMismatchError(AriannaError):
    """A recorded session score that does not replay against the given model.

    ``seq`` is the first diverging history point.
    """

    def __init__(self, seq: int, message: str):
        super().__init__(f"replay mismatch at seq {seq}: {message}")
        self.seq = seq
