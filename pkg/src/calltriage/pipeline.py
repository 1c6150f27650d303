"""End-to-end per-call processing.

Transcription and bio-acoustic analysis run concurrently. As soon as the
distress side finishes, the extreme-distress override (D > 0.9) can enqueue
the call at Q1 without waiting for the transcriber; the weaker override
(D > 0.8 with confidence < 0.4) needs the confidence value and therefore
joins the transcription branch first. Early-exit calls skip content
analysis entirely. Every stage failure degrades its own dimension to absent
instead of failing the call; only audio ingest errors abort.
"""

from __future__ import annotations

import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional, Protocol

from .asr import (
    ConfidenceBand,
    StubTranscriptionBackend,
    Transcript,
    TranscriptionBackend,
    band,
    transcribe,
)
from .audio import AudioBuffer, frame_signal
from .bioacoustics import (
    AcousticFeatures,
    DistressScore,
    SexEstimate,
    compute_distress,
    compute_features,
    estimate_f0,
    estimate_sex,
)
from .config import AppConfig
from .content import StubLLMBackend, classify, score_content
from .content.extraction import HttpLLMBackend, LLMBackend
from .asr import HttpTranscriptionBackend
from .errors import (
    BackendUnavailable,
    MalformedBackendResponse,
    NoVoicedSpeech,
    SchemaViolation,
)
from .events import QueueEventBus
from .queueing import (
    REASON_EARLY_EXIT_DISTRESS_LOW_CONF,
    REASON_EARLY_EXIT_EXTREME,
    AbsentSignal,
    DispatchQueue,
    SignalBands,
    assign_priority,
    check_early_exit,
)
from .records import CallRecord, CallStatus
from .store import CallStore

REASON_ASR_PENDING = "transcription pending at early exit"
REASON_CONTENT_SKIPPED_EARLY_EXIT = "content analysis skipped by early exit"
REASON_BELOW_MIN_CONFIDENCE = "confidence below minimum; flagged for audio review"


@dataclass(frozen=True)
class DistressResult:
    features: Optional[AcousticFeatures]
    sex: Optional[SexEstimate]
    distress: Optional[DistressScore]


class DistressProvider(Protocol):
    def analyze(self, buf: AudioBuffer) -> DistressResult:
        """Raise NoVoicedSpeech when the segment carries no voiced frames."""
        ...


class AcousticDistressAnalyzer:
    """The real bio-acoustic chain: framing, pitch, features, composite score."""

    def __init__(self, config: AppConfig):
        self.config = config

    def analyze(self, buf: AudioBuffer) -> DistressResult:
        frames = estimate_f0(buf, frame_signal(buf), self.config.voicing)
        features = compute_features(frames)
        sex = estimate_sex(features)
        distress = compute_distress(
            features,
            sex,
            self.config.distress_weights,
            high_threshold=self.config.thresholds.distress_high,
        )
        return DistressResult(features=features, sex=sex, distress=distress)


@dataclass
class FixtureDistressAnalyzer:
    """Test seam: exact distress outcomes keyed by audio source id.

    Unknown ids fall through to the real analyzer so mixed suites work.
    """

    fixtures: dict[str, DistressResult]
    fallback: Optional[DistressProvider] = None

    def analyze(self, buf: AudioBuffer) -> DistressResult:
        if buf.source_id in self.fixtures:
            return self.fixtures[buf.source_id]
        if self.fallback is not None:
            return self.fallback.analyze(buf)
        raise NoVoicedSpeech(f"no distress fixture for {buf.source_id!r}")


@dataclass
class PipelineDeps:
    """Everything process_call needs; the service and CLI both build one."""

    config: AppConfig
    asr_backend: TranscriptionBackend
    llm_backend: LLMBackend
    distress_provider: DistressProvider
    queue: DispatchQueue = field(default_factory=DispatchQueue)
    store: Optional[CallStore] = None
    events: Optional[QueueEventBus] = None


def build_deps(
    config: AppConfig,
    store: Optional[CallStore] = None,
    events: Optional[QueueEventBus] = None,
    fixtures: Optional[dict] = None,
) -> PipelineDeps:
    """Wire backends per config.backend_mode ('stub' uses fixture data)."""
    if config.backend_mode == "live":
        asr_backend: TranscriptionBackend = HttpTranscriptionBackend(config.asr_backend)
        llm_backend: LLMBackend = HttpLLMBackend(config.llm_backend)
    else:
        fixtures = fixtures or {}
        asr_fixtures = {
            sid: entry["transcript"]
            for sid, entry in fixtures.get("calls", {}).items()
            if "transcript" in entry
        }
        llm_fixtures = {
            entry["transcript"]["text"]: {
                "classification": entry["classification"],
                "entities": entry.get("entities", {}),
            }
            for entry in fixtures.get("calls", {}).values()
            if "transcript" in entry and "classification" in entry
        }
        asr_backend = StubTranscriptionBackend(fixtures=asr_fixtures)
        llm_backend = StubLLMBackend(fixtures=llm_fixtures)
    return PipelineDeps(
        config=config,
        asr_backend=asr_backend,
        llm_backend=llm_backend,
        distress_provider=AcousticDistressAnalyzer(config),
        store=store,
        events=events,
    )


def derive_bands(
    transcript: Optional[Transcript],
    content_score_value: Optional[float],
    distress_value: Optional[float],
    config: AppConfig,
    content_absent: bool,
) -> SignalBands:
    """Band the three signals; anything absent bands low and is flagged."""
    t = config.thresholds
    absent: set[AbsentSignal] = set()

    if transcript is None:
        confidence_high = False
        absent.add(AbsentSignal.TRANSCRIPT_ABSENT)
    else:
        confidence_high = transcript.confidence >= t.confidence_high

    if content_absent or content_score_value is None:
        content_high = False
        if content_absent:
            absent.add(AbsentSignal.CONTENT_ABSENT)
    else:
        content_high = content_score_value >= t.content_high

    if distress_value is None:
        concern_high = False
        absent.add(AbsentSignal.DISTRESS_ABSENT)
    else:
        concern_high = distress_value > t.distress_high

    return SignalBands(
        confidence_high=confidence_high,
        content_high=content_high,
        concern_high=concern_high,
        absent=frozenset(absent),
    )


def process_call(
    buf: AudioBuffer,
    deps: PipelineDeps,
    call_id: Optional[str] = None,
    received_at: Optional[datetime] = None,
    audio_ref: str = "",
) -> CallRecord:
    """Run the full per-call pipeline and return the QUEUED record."""
    call_id = call_id or uuid.uuid4().hex
    received_at = received_at or datetime.now(timezone.utc)
    config = deps.config
    timings: dict[str, float] = {}
    started = time.monotonic()

    record = CallRecord(
        call_id=call_id,
        received_at=received_at,
        audio_ref=audio_ref,
        source_id=buf.source_id,
    )
    _persist(deps, record)

    with ThreadPoolExecutor(max_workers=2) as pool:
        asr_future = pool.submit(_run_asr, buf, deps)
        bio_future = pool.submit(_run_bioacoustics, buf, deps)

        bio_elapsed, (distress_result, distress_error) = bio_future.result()
        timings["bioacoustics"] = bio_elapsed
        record = record.model_copy(
            update={
                "features": distress_result.features if distress_result else None,
                "sex_estimate": distress_result.sex if distress_result else None,
                "distress": distress_result.distress if distress_result else None,
                "distress_error": distress_error,
            }
        )
        d_value = record.distress.score if record.distress else None

        if d_value is not None and d_value > config.thresholds.early_exit_extreme:
            # Extreme distress: route now, let transcription land afterwards.
            bands = SignalBands(
                confidence_high=False,
                content_high=False,
                concern_high=d_value > config.thresholds.distress_high,
                absent=frozenset({AbsentSignal.CONTENT_ABSENT}),
            )
            assignment = assign_priority(
                bands, early_exit=True, early_exit_reason=REASON_EARLY_EXIT_EXTREME
            )
            assignment = _with_reasons(
                assignment, REASON_ASR_PENDING, REASON_CONTENT_SKIPPED_EARLY_EXIT
            )
            record = _enqueue(deps, record, assignment)

            asr_elapsed, (transcript, transcript_error) = asr_future.result()
            timings["asr"] = asr_elapsed
            timings["total"] = time.monotonic() - started
            record = record.model_copy(
                update={
                    "transcript": transcript,
                    "transcript_error": transcript_error,
                    "content_error": REASON_CONTENT_SKIPPED_EARLY_EXIT,
                    "processing_timings": timings,
                }
            )
            _persist(deps, record)
            return record

        asr_elapsed, (transcript, transcript_error) = asr_future.result()
        timings["asr"] = asr_elapsed
        record = record.model_copy(
            update={"transcript": transcript, "transcript_error": transcript_error}
        )

    confidence = transcript.confidence if transcript else None
    early = check_early_exit(d_value, confidence, config.thresholds)

    classification = None
    entities = None
    content_score = None
    content_error = None
    if early:
        content_error = REASON_CONTENT_SKIPPED_EARLY_EXIT
    elif transcript is None:
        content_error = "no transcript available"
    else:
        confidence_band = band(transcript.confidence, config.thresholds)
        if confidence_band is ConfidenceBand.VERY_LOW:
            content_error = REASON_BELOW_MIN_CONFIDENCE
        else:
            content_started = time.monotonic()
            try:
                classification, entities = classify(
                    transcript, confidence_band, deps.llm_backend
                )
                content_score = score_content(
                    classification,
                    config.content_weights,
                    high_threshold=config.thresholds.content_high,
                )
            except (BackendUnavailable, SchemaViolation, MalformedBackendResponse) as exc:
                content_error = f"content stage degraded: {exc}"
            timings["content"] = time.monotonic() - content_started

    record = record.model_copy(
        update={
            "classification": classification,
            "entities": entities,
            "content_score": content_score,
            "content_error": content_error,
        }
    )

    bands = derive_bands(
        transcript,
        content_score.score if content_score else None,
        d_value,
        config,
        content_absent=content_score is None,
    )
    assignment = assign_priority(
        bands,
        early_exit=early,
        early_exit_reason=REASON_EARLY_EXIT_DISTRESS_LOW_CONF,
    )
    timings["total"] = time.monotonic() - started
    record = record.model_copy(update={"processing_timings": timings})
    record = _enqueue(deps, record, assignment)
    _persist(deps, record)
    return record


def _run_asr(buf, deps) -> tuple[float, tuple[Optional[Transcript], Optional[str]]]:
    started = time.monotonic()
    try:
        result: tuple[Optional[Transcript], Optional[str]] = (
            transcribe(buf, deps.asr_backend),
            None,
        )
    except (BackendUnavailable, MalformedBackendResponse) as exc:
        result = (None, str(exc))
    return time.monotonic() - started, result


def _run_bioacoustics(
    buf, deps
) -> tuple[float, tuple[Optional[DistressResult], Optional[str]]]:
    started = time.monotonic()
    try:
        result: tuple[Optional[DistressResult], Optional[str]] = (
            deps.distress_provider.analyze(buf),
            None,
        )
    except NoVoicedSpeech as exc:
        result = (None, str(exc))
    return time.monotonic() - started, result


def _with_reasons(assignment, *extra: str):
    return assignment.__class__(
        level=assignment.level,
        matrix_cell=assignment.matrix_cell,
        early_exit=assignment.early_exit,
        reason_codes=assignment.reason_codes + tuple(extra),
        assigned_at=assignment.assigned_at,
    )


def _enqueue(deps: PipelineDeps, record: CallRecord, assignment) -> CallRecord:
    record = record.model_copy(
        update={"assignment": assignment, "status": CallStatus.QUEUED}
    )
    # persist before the call becomes claimable: a claim races only against
    # a record that already reads QUEUED on disk
    _persist(deps, record)
    deps.queue.enqueue(record.call_id, assignment)
    if deps.events is not None:
        deps.events.publish("enqueue", record.call_id, assignment.level.value)
    return record


def _persist(deps: PipelineDeps, record: CallRecord) -> None:
    if deps.store is not None:
        with deps.store.lock(record.call_id):
            deps.store.save(record)
