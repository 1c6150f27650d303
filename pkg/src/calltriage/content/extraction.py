"""LLM-backed classification and entity extraction.

The prompt is confidence-aware: high-band transcripts get the full
extraction template, low-band transcripts the guarded template (uncertainty
marking, location-first, no invention, phonetic alternatives). Transcripts
in the very-low band never reach this layer; the orchestrator skips
extraction entirely and flags the call for direct audio review.

One re-ask is allowed when the model's reply fails schema validation, then
the failure propagates so the pipeline can degrade the content dimension.
The wire contract is a JSON-only completion call:

    request:  {"prompt": "...", "json_only": true, "temperature": 0}
    response: {"completion": "<json text>"}
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Protocol

import httpx

from ..asr import ConfidenceBand, Transcript
from ..config import BackendConfig
from ..errors import BackendUnavailable, MalformedBackendResponse, SchemaViolation
from .schema import (
    ClassifierOutput,
    EmergencyClassification,
    ExtractedEntities,
    parse_classifier_output,
)

PROMPT_FILES = {
    ConfidenceBand.HIGH: "full_extraction_v1.txt",
    ConfidenceBand.LOW: "guarded_extraction_v1.txt",
}


def render_prompt(transcript_text: str, band: ConfidenceBand) -> str:
    template = (
        resources.files("calltriage.content.prompts")
        .joinpath(PROMPT_FILES[band])
        .read_text()
    )
    return template.replace("{transcript}", transcript_text)


class LLMBackend(Protocol):
    backend_id: str

    def complete(self, prompt: str) -> str:
        """Return the raw completion text; raise BackendUnavailable on failure."""
        ...


def classify(
    transcript: Transcript,
    band: ConfidenceBand,
    backend: LLMBackend,
) -> tuple[EmergencyClassification, ExtractedEntities]:
    """Classify a transcript, re-asking once on a schema violation.

    Entities from non-high-band transcripts are always uncertainty-marked,
    whatever the model said.
    """
    if band is ConfidenceBand.VERY_LOW:
        raise ValueError("classification is skipped below minimum confidence")

    prompt = render_prompt(transcript.text, band)
    try:
        output = parse_classifier_output(backend.complete(prompt))
    except SchemaViolation:
        output = parse_classifier_output(backend.complete(prompt))

    entities = output.entities
    if band is not ConfidenceBand.HIGH and not entities.uncertainty_marked:
        entities = entities.model_copy(update={"uncertainty_marked": True})
    return output.classification, entities


class HttpLLMBackend:
    """Client for a local completion server with a JSON-only contract."""

    def __init__(self, config: BackendConfig, backend_id: str = "llm-http"):
        self.config = config
        self.backend_id = backend_id

    def complete(self, prompt: str) -> str:
        request = {"prompt": prompt, "json_only": True, "temperature": 0}
        try:
            response = httpx.post(
                self.config.url, json=request, timeout=self.config.timeout
            )
            response.raise_for_status()
        except httpx.HTTPError as exc:
            raise BackendUnavailable(f"llm backend: {exc}") from exc
        try:
            payload = response.json()
        except ValueError as exc:
            raise MalformedBackendResponse("non-JSON llm response") from exc
        if "completion" not in payload:
            raise MalformedBackendResponse("llm response missing 'completion'")
        return str(payload["completion"])


DEFAULT_STUB_OUTPUT = ClassifierOutput(
    classification=EmergencyClassification(
        hazard_category="other",
        life_threat_level="none",
        vulnerable_population=False,
        situation_status="stable",
        persons_affected=0,
    ),
    entities=ExtractedEntities(),
)


@dataclass
class StubLLMBackend:
    """Deterministic classifier keyed by the transcript text inside the prompt.

    Fixture keys are exact transcript strings; values are wire-shape dicts
    with ``classification`` and optional ``entities``. Unknown transcripts
    fall back to a neutral classification. The invocation counter exists so
    tests can assert the early-exit path never touches this layer.
    """

    fixtures: dict[str, dict] = field(default_factory=dict)
    backend_id: str = "llm-stub"
    delay: float = 0.0
    fail: bool = False
    malformed_replies: int = 0  # emit this many bad replies before a good one
    calls: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def complete(self, prompt: str) -> str:
        with self._lock:
            self.calls += 1
        if self.delay:
            time.sleep(self.delay)
        if self.fail:
            raise BackendUnavailable("stub llm backend set to fail")
        if self.malformed_replies > 0:
            self.malformed_replies -= 1
            return "sorry, I cannot answer in JSON"
        transcript = prompt.rsplit("Transcript:", 1)[-1].strip()
        entry = self.fixtures.get(transcript)
        if entry is None:
            return DEFAULT_STUB_OUTPUT.model_dump_json()
        output = ClassifierOutput.model_validate(
            {
                "classification": entry["classification"],
                "entities": entry.get("entities", {}),
            }
        )
        return output.model_dump_json()
