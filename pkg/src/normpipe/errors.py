"""Exception types shared across the package."""

from __future__ import annotations


class NormpipeError(Exception):
    """Base class for all package errors."""


class LexiconLoadError(NormpipeError):
    """A lexicon data file is missing or malformed."""


class EncodingError(NormpipeError):
    """A phonetic encoder received input with no letters."""


class FixtureParseError(NormpipeError):
    """A fixture file line could not be parsed or duplicates a key."""


class TrainingError(NormpipeError):
    """An n-gram model could not be trained (e.g. empty corpus)."""


class TransportError(NormpipeError):
    """A remote backend request failed.

    Carries enough metadata for the caller to decide whether to retry.
    """

    def __init__(self, message: str, *, url: str, attempts: int,
                 status: int | None = None, retryable: bool = True) -> None:
        super().__init__(message)
        self.url = url
        self.attempts = attempts
        self.status = status
        self.retryable = retryable


class EvaluationError(NormpipeError):
    """Evaluation inputs are empty or misaligned."""
