"""Queue prioritization: band matrix, early-exit overrides, dispatch queue.

The three banded signals (confidence, content, concern) index an eight-cell
matrix that fixes the priority level; two override rules bypass the matrix
for extreme vocal distress. The queue itself orders by level rank and then
FIFO by assignment time, and every operation is serialized under one lock so
concurrent enqueues and claims stay linearizable.
"""

from __future__ import annotations

import enum
import heapq
import itertools
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional

from .config import Thresholds
from .errors import DuplicateCall


class QueueLevel(enum.Enum):
    Q1_IMMEDIATE = "Q1_IMMEDIATE"
    Q2_ELEVATED = "Q2_ELEVATED"
    Q3_MONITOR = "Q3_MONITOR"
    Q5_ROUTINE = "Q5_ROUTINE"
    Q5_REVIEW = "Q5_REVIEW"


# Lower rank dequeues first. Both Q5 flavors share a rank: REVIEW adds an
# audio-quality flag, not urgency.
LEVEL_RANK = {
    QueueLevel.Q1_IMMEDIATE: 1,
    QueueLevel.Q2_ELEVATED: 2,
    QueueLevel.Q3_MONITOR: 3,
    QueueLevel.Q5_ROUTINE: 5,
    QueueLevel.Q5_REVIEW: 5,
}


class AbsentSignal(enum.Enum):
    TRANSCRIPT_ABSENT = "TRANSCRIPT_ABSENT"
    CONTENT_ABSENT = "CONTENT_ABSENT"
    DISTRESS_ABSENT = "DISTRESS_ABSENT"


@dataclass(frozen=True)
class SignalBands:
    """Banded view of the three signals; absent dimensions band low."""

    confidence_high: bool
    content_high: bool
    concern_high: bool
    absent: frozenset[AbsentSignal] = frozenset()

    @property
    def cell(self) -> tuple[bool, bool, bool]:
        return (self.confidence_high, self.content_high, self.concern_high)


@dataclass(frozen=True)
class QueueAssignment:
    level: QueueLevel
    matrix_cell: tuple[bool, bool, bool]
    early_exit: bool
    reason_codes: tuple[str, ...]
    assigned_at: datetime


# Reason codes per matrix cell (confidence, content, concern).
CELL_TABLE: dict[tuple[bool, bool, bool], tuple[QueueLevel, str]] = {
    (True, False, False): (QueueLevel.Q5_ROUTINE, "routine; entities available"),
    (True, True, False): (QueueLevel.Q2_ELEVATED, "composed reporter, urgent content"),
    (True, False, True): (QueueLevel.Q3_MONITOR, "assess anxiety vs emergency"),
    (True, True, True): (QueueLevel.Q1_IMMEDIATE, "all signals elevated"),
    (False, False, False): (QueueLevel.Q5_REVIEW, "possible technical issue"),
    (False, True, False): (QueueLevel.Q2_ELEVATED, "garbled audio, fragments suggest urgency"),
    (False, False, True): (QueueLevel.Q1_IMMEDIATE, "possible dialect shift"),
    (False, True, True): (QueueLevel.Q1_IMMEDIATE, "maximum priority, all indicators"),
}

REASON_EARLY_EXIT_EXTREME = "early-exit: extreme distress"
REASON_EARLY_EXIT_DISTRESS_LOW_CONF = "early-exit: high distress, low confidence"
ABSENT_REASONS = {
    AbsentSignal.TRANSCRIPT_ABSENT: "transcription unavailable",
    AbsentSignal.CONTENT_ABSENT: "content analysis unavailable",
    AbsentSignal.DISTRESS_ABSENT: "no voiced speech for distress analysis",
}

# Display metadata shown to dispatchers alongside each level; the clinical
# decision itself (ESI level / START color) always stays with the human.
PROTOCOL_GUIDANCE = {
    QueueLevel.Q1_IMMEDIATE: "Review audio now; assign ESI or START color per clinical judgment",
    QueueLevel.Q2_ELEVATED: "Review extracted entities promptly; listen if uncertain",
    QueueLevel.Q3_MONITOR: "Assess distress source; de-escalate if no emergency",
    QueueLevel.Q5_ROUTINE: "Standard handling with extracted entities",
    QueueLevel.Q5_REVIEW: "Standard handling; check audio quality first",
}


def check_early_exit(
    distress: Optional[float],
    confidence: Optional[float],
    thresholds: Thresholds | None = None,
) -> bool:
    """Overrides: D > 0.9 always; D > 0.8 when confidence < 0.4.

    Absent distress can never trigger an override. Absent confidence counts
    as 0 (transcription failed entirely).
    """
    thresholds = thresholds or Thresholds()
    if distress is None:
        return False
    if distress > thresholds.early_exit_extreme:
        return True
    c = 0.0 if confidence is None else confidence
    return distress > thresholds.early_exit_distress and c < thresholds.confidence_min


def assign_priority(
    bands: SignalBands,
    early_exit: bool,
    assigned_at: Optional[datetime] = None,
    early_exit_reason: str = REASON_EARLY_EXIT_EXTREME,
) -> QueueAssignment:
    """Map bands to a queue level, or force Q1 under an early-exit override."""
    if assigned_at is None:
        assigned_at = datetime.now(timezone.utc)

    reasons: list[str] = []
    if early_exit:
        level = QueueLevel.Q1_IMMEDIATE
        reasons.append(early_exit_reason)
    else:
        level, cell_reason = CELL_TABLE[bands.cell]
        reasons.append(cell_reason)
    for flag in sorted(bands.absent, key=lambda f: f.value):
        reasons.append(ABSENT_REASONS[flag])

    return QueueAssignment(
        level=level,
        matrix_cell=bands.cell,
        early_exit=early_exit,
        reason_codes=tuple(reasons),
        assigned_at=assigned_at,
    )


@dataclass(frozen=True)
class QueueEntry:
    call_id: str
    assignment: QueueAssignment


class DispatchQueue:
    """Priority queue over calls: level rank first, FIFO within a level.

    All operations take the queue lock, so any interleaving of enqueues,
    claims, and removals observes a consistent total order and no call is
    ever issued twice.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._heap: list[tuple[int, datetime, int, str]] = []
        self._entries: dict[str, tuple[int, QueueEntry]] = {}
        self._seq = itertools.count()

    def enqueue(self, call_id: str, assignment: QueueAssignment) -> None:
        with self._lock:
            if call_id in self._entries:
                raise DuplicateCall(call_id)
            seq = next(self._seq)
            self._entries[call_id] = (seq, QueueEntry(call_id, assignment))
            heapq.heappush(
                self._heap,
                (
                    LEVEL_RANK[assignment.level],
                    assignment.assigned_at,
                    seq,
                    call_id,
                ),
            )

    def claim_next(self) -> Optional[QueueEntry]:
        """Pop the most urgent entry, or None when the queue is empty."""
        with self._lock:
            while self._heap:
                _, _, seq, call_id = heapq.heappop(self._heap)
                live = self._entries.get(call_id)
                if live is not None and live[0] == seq:
                    del self._entries[call_id]
                    return live[1]
            return None

    def remove(self, call_id: str) -> Optional[QueueEntry]:
        """Take a specific call out of the queue (its heap row goes stale and
        is skipped lazily). Returns None when it was not queued."""
        with self._lock:
            live = self._entries.pop(call_id, None)
            return live[1] if live else None

    def snapshot(self) -> list[QueueEntry]:
        """Entries in dequeue order, without removing anything."""
        with self._lock:
            live_seqs = {seq: entry for seq, entry in self._entries.values()}
            rows = sorted(row for row in self._heap if row[2] in live_seqs)
            return [live_seqs[row[2]] for row in rows]

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)

    def __contains__(self, call_id: str) -> bool:
        with self._lock:
            return call_id in self._entries
