"""Request/response models for the HTTP API."""

from __future__ import annotations

from datetime import datetime
from typing import Optional

from pydantic import BaseModel, Field

from ..queueing import ABSENT_REASONS, PROTOCOL_GUIDANCE, QueueEntry
from ..records import StartColor, TriageProtocol


class SubmitResponse(BaseModel):
    call_id: str


class ClaimRequest(BaseModel):
    dispatcher_id: str = Field(min_length=1)


class TriageRequest(BaseModel):
    protocol: TriageProtocol
    esi_level: Optional[int] = Field(default=None, ge=1, le=5)
    start_color: Optional[StartColor] = None
    dispatcher_id: str = Field(min_length=1)
    notes: str = ""


class QueueEntryView(BaseModel):
    call_id: str
    level: str
    matrix_cell: tuple[bool, bool, bool]
    early_exit: bool
    reason_codes: list[str]
    absent_flags: list[str]
    assigned_at: datetime
    wait_seconds: float
    sla_hint: Optional[str] = None
    protocol_guidance: str


class QueueView(BaseModel):
    entries: list[QueueEntryView]


class ErrorBody(BaseModel):
    error: str
    detail: str


_REASON_TO_FLAG = {reason: flag.value for flag, reason in ABSENT_REASONS.items()}


def queue_entry_view(
    entry: QueueEntry, now: datetime, sla_hints: dict[str, Optional[str]]
) -> QueueEntryView:
    a = entry.assignment
    return QueueEntryView(
        call_id=entry.call_id,
        level=a.level.value,
        matrix_cell=a.matrix_cell,
        early_exit=a.early_exit,
        reason_codes=list(a.reason_codes),
        absent_flags=[
            _REASON_TO_FLAG[r] for r in a.reason_codes if r in _REASON_TO_FLAG
        ],
        assigned_at=a.assigned_at,
        wait_seconds=max(0.0, (now - a.assigned_at).total_seconds()),
        sla_hint=sla_hints.get(a.level.value),
        protocol_guidance=PROTOCOL_GUIDANCE[a.level],
    )
