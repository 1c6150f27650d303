"""Transcription backends and utterance confidence.

Backends are pluggable: anything that turns a WAV payload into text plus
per-token log-probabilities. Confidence is always recomputed locally as
exp(mean log-probability) and never trusted from the backend, since backends
disagree about what "confidence" means. An empty token sequence maps to
confidence 0 (the conservative reading: flag for human audio review).

The HTTP wire contract is a single JSON POST:

    request:  {"audio": "<base64 wav>", "language_hint": "en"}
    response: {"text": "...", "tokens": [{"token": "...", "logprob": -0.12}, ...]}
"""

from __future__ import annotations

import base64
import enum
import math
import threading
import time
from dataclasses import dataclass, field
from typing import Protocol, Sequence

import httpx

from .audio.ingest import AudioBuffer, buffer_to_wav_bytes
from .config import BackendConfig, Thresholds
from .errors import BackendUnavailable, MalformedBackendResponse


@dataclass(frozen=True)
class Transcript:
    text: str
    token_logprobs: tuple[float, ...]
    confidence: float
    language_tag: str = "en"
    backend_id: str = ""
    latency: float = 0.0


class ConfidenceBand(enum.Enum):
    HIGH = "high"
    LOW = "low"
    VERY_LOW = "very_low"


def utterance_confidence(token_logprobs: Sequence[float]) -> float:
    """exp of the mean token log-probability; 0 for an empty sequence."""
    if len(token_logprobs) == 0:
        return 0.0
    return math.exp(sum(token_logprobs) / len(token_logprobs))


def band(
    confidence: float, thresholds: Thresholds | None = None
) -> ConfidenceBand:
    """Total banding over [0, 1]: >=0.7 high, >=0.4 low, else very low."""
    thresholds = thresholds or Thresholds()
    if confidence >= thresholds.confidence_high:
        return ConfidenceBand.HIGH
    if confidence >= thresholds.confidence_min:
        return ConfidenceBand.LOW
    return ConfidenceBand.VERY_LOW


class TranscriptionBackend(Protocol):
    backend_id: str

    def transcribe_raw(
        self, wav_bytes: bytes, source_id: str, language_hint: str
    ) -> dict:
        """Return the wire-format response dict; raise BackendUnavailable on failure."""
        ...


def transcribe(
    buf: AudioBuffer,
    backend: TranscriptionBackend,
    language_hint: str = "en",
) -> Transcript:
    """Run the backend and rebuild confidence locally from token log-probs."""
    started = time.monotonic()
    payload = backend.transcribe_raw(
        buffer_to_wav_bytes(buf), buf.source_id, language_hint
    )
    latency = time.monotonic() - started

    if not isinstance(payload, dict) or "text" not in payload:
        raise MalformedBackendResponse("response missing 'text'")
    tokens = payload.get("tokens", [])
    if not isinstance(tokens, list):
        raise MalformedBackendResponse("'tokens' must be a list")
    logprobs = []
    for tok in tokens:
        try:
            lp = float(tok["logprob"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedBackendResponse(f"bad token entry: {tok!r}") from exc
        if lp > 0.0:
            raise MalformedBackendResponse(
                f"positive log-probability {lp}; backend convention mismatch"
            )
        logprobs.append(lp)

    return Transcript(
        text=str(payload["text"]),
        token_logprobs=tuple(logprobs),
        confidence=utterance_confidence(logprobs),
        language_tag=str(payload.get("language", language_hint)),
        backend_id=backend.backend_id,
        latency=latency,
    )


class HttpTranscriptionBackend:
    """Client for a local transcription server speaking the JSON contract."""

    def __init__(self, config: BackendConfig, backend_id: str = "asr-http"):
        self.config = config
        self.backend_id = backend_id

    def transcribe_raw(
        self, wav_bytes: bytes, source_id: str, language_hint: str
    ) -> dict:
        request = {
            "audio": base64.b64encode(wav_bytes).decode("ascii"),
            "language_hint": language_hint,
        }
        try:
            response = httpx.post(
                self.config.url, json=request, timeout=self.config.timeout
            )
            response.raise_for_status()
        except httpx.HTTPError as exc:
            raise BackendUnavailable(f"transcription backend: {exc}") from exc
        try:
            return response.json()
        except ValueError as exc:
            raise MalformedBackendResponse("non-JSON transcription response") from exc


@dataclass
class StubTranscriptionBackend:
    """Deterministic backend keyed by audio source id, for tests and offline runs.

    Fixture entries look like
    ``{"text": "...", "token_logprobs": [-0.1, ...], "language": "en"}``.
    Unknown ids yield an empty transcript (confidence 0), which is the honest
    "no data" answer rather than an invented one. An optional artificial
    delay lets tests exercise the parallel pipeline's timing rules.
    """

    fixtures: dict[str, dict] = field(default_factory=dict)
    backend_id: str = "asr-stub"
    delay: float = 0.0
    fail: bool = False
    calls: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def transcribe_raw(
        self, wav_bytes: bytes, source_id: str, language_hint: str
    ) -> dict:
        with self._lock:
            self.calls += 1
        if self.delay:
            time.sleep(self.delay)
        if self.fail:
            raise BackendUnavailable("stub transcription backend set to fail")
        entry = self.fixtures.get(source_id)
        if entry is None:
            return {"text": "", "tokens": [], "language": language_hint}
        tokens = [
            {"token": f"t{i}", "logprob": lp}
            for i, lp in enumerate(entry.get("token_logprobs", []))
        ]
        return {
            "text": entry.get("text", ""),
            "tokens": tokens,
            "language": entry.get("language", language_hint),
        }


def logprobs_for_confidence(confidence: float, n_tokens: int = 5) -> list[float]:
    """Token log-probs that reproduce an exact target confidence (fixture helper)."""
    if not 0.0 < confidence <= 1.0:
        raise ValueError("confidence must be in (0, 1]")
    return [math.log(confidence)] * n_tokens
