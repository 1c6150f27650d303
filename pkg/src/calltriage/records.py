"""Per-call lifecycle record and the CAD export package.

A call advances strictly PROCESSING -> QUEUED -> CLAIMED -> TRIAGED ->
CLOSED. Signal fields are None while pending or when their stage degraded;
the reason lands in the matching ``*_error`` field and in the assignment's
reason codes. Clinical triage is recorded here exactly as the dispatcher
entered it, never computed.
"""

from __future__ import annotations

import enum
import json
from datetime import datetime, timezone
from typing import Optional

from pydantic import BaseModel, Field, model_validator

from .asr import ConfidenceBand, Transcript
from .bioacoustics.distress import DistressScore, SexEstimate
from .bioacoustics.features import AcousticFeatures
from .content.schema import EmergencyClassification, ExtractedEntities
from .content.scoring import ContentScore
from .errors import Conflict
from .queueing import QueueAssignment

CAD_SCHEMA_VERSION = "1.0.0"


class CallStatus(enum.Enum):
    PROCESSING = "PROCESSING"
    QUEUED = "QUEUED"
    CLAIMED = "CLAIMED"
    TRIAGED = "TRIAGED"
    CLOSED = "CLOSED"


_STATUS_ORDER = [
    CallStatus.PROCESSING,
    CallStatus.QUEUED,
    CallStatus.CLAIMED,
    CallStatus.TRIAGED,
    CallStatus.CLOSED,
]


def check_transition(current: CallStatus, new: CallStatus) -> None:
    """Allow only single forward steps along the lifecycle."""
    if _STATUS_ORDER.index(new) != _STATUS_ORDER.index(current) + 1:
        raise Conflict(f"illegal status transition {current.value} -> {new.value}")


class TriageProtocol(str, enum.Enum):
    ESI = "ESI"
    START = "START"


class StartColor(str, enum.Enum):
    RED = "RED"
    YELLOW = "YELLOW"
    GREEN = "GREEN"
    BLACK = "BLACK"


class TriageDecision(BaseModel):
    """The dispatcher's clinical call, exactly one scale filled per protocol."""

    protocol: TriageProtocol
    esi_level: Optional[int] = Field(default=None, ge=1, le=5)
    start_color: Optional[StartColor] = None
    dispatcher_id: str
    decided_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    notes: str = ""

    @model_validator(mode="after")
    def _one_scale(self) -> "TriageDecision":
        if self.protocol is TriageProtocol.ESI:
            if self.esi_level is None or self.start_color is not None:
                raise ValueError("ESI protocol requires esi_level and no start_color")
        else:
            if self.start_color is None or self.esi_level is not None:
                raise ValueError("START protocol requires start_color and no esi_level")
        return self


class CallRecord(BaseModel):
    call_id: str
    received_at: datetime
    audio_ref: str
    source_id: str = ""
    status: CallStatus = CallStatus.PROCESSING

    transcript: Optional[Transcript] = None
    transcript_error: Optional[str] = None
    classification: Optional[EmergencyClassification] = None
    entities: Optional[ExtractedEntities] = None
    content_score: Optional[ContentScore] = None
    content_error: Optional[str] = None
    features: Optional[AcousticFeatures] = None
    sex_estimate: Optional[SexEstimate] = None
    distress: Optional[DistressScore] = None
    distress_error: Optional[str] = None

    assignment: Optional[QueueAssignment] = None
    claimed_by: Optional[str] = None
    triage: Optional[TriageDecision] = None
    processing_timings: dict[str, float] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _lifecycle_consistency(self) -> "CallRecord":
        order = _STATUS_ORDER.index(self.status)
        if order >= _STATUS_ORDER.index(CallStatus.QUEUED) and self.assignment is None:
            raise ValueError("queued and later records must carry an assignment")
        if self.triage is not None and order < _STATUS_ORDER.index(CallStatus.TRIAGED):
            raise ValueError("triage recorded before TRIAGED status")
        return self

    @property
    def confidence_band(self) -> Optional[ConfidenceBand]:
        from .asr import band

        if self.transcript is None:
            return None
        return band(self.transcript.confidence)


def build_cad_package(record: CallRecord) -> dict:
    """Structured per-call document for downstream dispatch systems."""
    assignment = record.assignment
    package = {
        "schema_version": CAD_SCHEMA_VERSION,
        "call_id": record.call_id,
        "received_at": record.received_at.isoformat(),
        "queue_priority": {
            "level": assignment.level.value if assignment else None,
            "matrix_cell": list(assignment.matrix_cell) if assignment else None,
            "early_exit": assignment.early_exit if assignment else None,
            "reason_codes": list(assignment.reason_codes) if assignment else [],
            "assigned_at": assignment.assigned_at.isoformat() if assignment else None,
        },
        "transcription": {
            "text": record.transcript.text if record.transcript else None,
            "confidence": record.transcript.confidence if record.transcript else None,
            "band": record.confidence_band.value if record.transcript else None,
            "language": record.transcript.language_tag if record.transcript else None,
            "error": record.transcript_error,
        },
        "extracted_entities": (
            record.entities.model_dump() if record.entities else None
        ),
        "classification": (
            record.classification.model_dump() if record.classification else None
        ),
        "content_score": record.content_score.score if record.content_score else None,
        "distress_indicators": (
            {
                "score": record.distress.score,
                "high_distress": record.distress.high_distress,
                "pitch_elevation": record.distress.pitch_elevation,
                "pitch_instability": record.distress.pitch_instability,
                "energy": record.distress.energy,
                "perturbation": record.distress.perturbation,
                "jitter_above_pathology": (
                    record.features.jitter_above_pathology
                    if record.features
                    else None
                ),
            }
            if record.distress
            else None
        ),
        "audio_ref": record.audio_ref,
        "triage": record.triage.model_dump(mode="json") if record.triage else None,
    }
    return package


def cad_package_json(record: CallRecord) -> str:
    """Deterministic serialization: sorted keys, no whitespace drift."""
    return json.dumps(build_cad_package(record), sort_keys=True, separators=(",", ":"))
