"""Long-running call service: intake, worker pool, claims, triage, recovery.

One CallProcessor owns the dispatch queue, the store, and the event bus.
Intake validates and persists audio synchronously, then hands the pipeline
job to a bounded worker pool (sized for edge hardware). Claims race through
the queue's atomic removal, so two dispatchers can never take the same call.
On startup, queued records are re-enqueued in their original order and
half-processed ones are rerun from stored audio.
"""

from __future__ import annotations

import logging
import uuid
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from typing import Optional

from ..audio import load_audio
from ..config import AppConfig
from ..errors import Conflict, NotFound
from ..events import QueueEventBus
from ..pipeline import PipelineDeps, build_deps, process_call
from ..queueing import QueueEntry
from ..records import CallRecord, CallStatus, TriageDecision, check_transition
from ..store import CallStore

logger = logging.getLogger(__name__)


class CallProcessor:
    def __init__(
        self,
        config: AppConfig,
        deps: Optional[PipelineDeps] = None,
        fixtures: Optional[dict] = None,
    ):
        self.config = config
        self.store = CallStore(config.storage_path)
        self.events = QueueEventBus()
        if deps is None:
            deps = build_deps(config, store=self.store, events=self.events, fixtures=fixtures)
        else:
            deps.store = self.store
            deps.events = self.events
        self.deps = deps
        self.queue = deps.queue
        self._pool = ThreadPoolExecutor(
            max_workers=config.worker_pool_size, thread_name_prefix="call-worker"
        )

    # -- intake -----------------------------------------------------------

    def submit_wav(self, wav_bytes: bytes, source_id: str = "") -> str:
        """Validate, persist, and schedule a call; returns its id.

        Ingest errors raise immediately (the caller must know the segment
        was rejected); everything after that degrades per dimension.
        """
        call_id = uuid.uuid4().hex
        buf = load_audio(wav_bytes, source_id=source_id or call_id,
                         min_duration=self.config.min_call_duration)
        audio_ref = self.store.save_audio(call_id, wav_bytes)
        record = CallRecord(
            call_id=call_id,
            received_at=datetime.now(timezone.utc),
            audio_ref=audio_ref,
            source_id=buf.source_id,
        )
        with self.store.lock(call_id):
            self.store.save(record)
        self._pool.submit(self._process_job, buf, call_id, record.received_at, audio_ref)
        return call_id

    def _process_job(self, buf, call_id, received_at, audio_ref) -> None:
        try:
            process_call(
                buf, self.deps, call_id=call_id,
                received_at=received_at, audio_ref=audio_ref,
            )
        except Exception:
            logger.exception("pipeline failed for call %s", call_id)

    def process_sync(self, wav_bytes: bytes, source_id: str = "") -> CallRecord:
        """Inline processing for batch tooling; bypasses the pool."""
        call_id = uuid.uuid4().hex
        buf = load_audio(wav_bytes, source_id=source_id or call_id,
                         min_duration=self.config.min_call_duration)
        audio_ref = self.store.save_audio(call_id, wav_bytes)
        return process_call(buf, self.deps, call_id=call_id, audio_ref=audio_ref)

    # -- recovery ---------------------------------------------------------

    def recover(self) -> dict[str, int]:
        """Rebuild queue state from disk after a restart."""
        requeued = 0
        reprocessed = 0
        queued = self.store.list_records(status=CallStatus.QUEUED)
        queued.sort(key=lambda r: r.assignment.assigned_at)
        for record in queued:
            self.queue.enqueue(record.call_id, record.assignment)
            requeued += 1
        for record in self.store.list_records(status=CallStatus.PROCESSING):
            try:
                wav = self.store.load_audio(record.call_id)
                buf = load_audio(wav, source_id=record.source_id,
                                 min_duration=self.config.min_call_duration)
            except Exception:
                logger.exception("cannot reprocess call %s", record.call_id)
                continue
            self._pool.submit(
                self._process_job, buf, record.call_id,
                record.received_at, record.audio_ref,
            )
            reprocessed += 1
        return {"requeued": requeued, "reprocessed": reprocessed}

    # -- dispatcher operations ---------------------------------------------

    def claim(self, call_id: str, dispatcher_id: str) -> CallRecord:
        """Exclusive claim of a specific queued call."""
        if not self.store.exists(call_id):
            raise NotFound(call_id)
        entry = self.queue.remove(call_id)
        if entry is None:
            raise Conflict(f"call {call_id} is not claimable")
        return self._apply_claim(call_id, dispatcher_id)

    def claim_next(self, dispatcher_id: str) -> Optional[CallRecord]:
        """Claim the most urgent queued call, or None when idle."""
        entry: Optional[QueueEntry] = self.queue.claim_next()
        if entry is None:
            return None
        return self._apply_claim(entry.call_id, dispatcher_id)

    def _apply_claim(self, call_id: str, dispatcher_id: str) -> CallRecord:
        with self.store.lock(call_id):
            record = self.store.load(call_id)
            check_transition(record.status, CallStatus.CLAIMED)
            record = record.model_copy(
                update={"status": CallStatus.CLAIMED, "claimed_by": dispatcher_id}
            )
            self.store.save(record)
        self.events.publish("claim", call_id, record.assignment.level.value)
        return record

    def submit_triage(self, call_id: str, decision: TriageDecision) -> CallRecord:
        with self.store.lock(call_id):
            record = self.store.load(call_id)
            if record.status is not CallStatus.CLAIMED:
                raise Conflict(
                    f"triage allowed only on claimed calls (status {record.status.value})"
                )
            record = record.model_copy(
                update={"status": CallStatus.TRIAGED, "triage": decision}
            )
            self.store.save(record)
        self.events.publish("triage", call_id, record.assignment.level.value)
        return record

    def close_call(self, call_id: str) -> CallRecord:
        with self.store.lock(call_id):
            record = self.store.load(call_id)
            check_transition(record.status, CallStatus.CLOSED)
            record = record.model_copy(update={"status": CallStatus.CLOSED})
            self.store.save(record)
        self.events.publish("close", call_id, record.assignment.level.value)
        return record

    # -- views --------------------------------------------------------------

    def get_record(self, call_id: str) -> CallRecord:
        return self.store.load(call_id)

    def queue_snapshot(self) -> list[QueueEntry]:
        return self.queue.snapshot()

    def shutdown(self) -> None:
        self._pool.shutdown(wait=True)
