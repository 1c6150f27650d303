"""Exception types shared across the pipeline.

Stage errors are deliberately narrow: the orchestrator catches them per
dimension and degrades that dimension to absent instead of failing the call.
"""


class CallTriageError(Exception):
    """Base class for all package errors."""


class UnsupportedFormat(CallTriageError):
    """Audio source is not a decodable 16-bit PCM WAV with 1-2 channels."""


class EmptyAudio(CallTriageError):
    """Audio segment is too short to analyze (below the minimum duration)."""


class NoVoicedSpeech(CallTriageError):
    """No voiced frames found; pitch statistics are undefined."""


class BackendUnavailable(CallTriageError):
    """A transcription or LLM backend could not be reached in time."""


class MalformedBackendResponse(CallTriageError):
    """A backend answered with a payload that violates its wire contract."""


class SchemaViolation(CallTriageError):
    """LLM output failed schema validation (after the bounded re-ask)."""


class DuplicateCall(CallTriageError):
    """Attempt to enqueue a call that is already queued."""


class NotFound(CallTriageError):
    """No stored record exists for the requested call id."""


class Conflict(CallTriageError):
    """State transition refused (e.g. second claim on a claimed call)."""


class CorruptRecord(CallTriageError):
    """A stored call record could not be decoded."""


class StorageFull(CallTriageError):
    """The record store ran out of disk space."""


class DomainError(CallTriageError):
    """Numeric input outside the function's domain."""
