"""Runtime configuration.

Every tunable named by the routing and scoring contracts lives here with its
default: band thresholds (0.7 / 0.4 / 50 / 0.5), early-exit cutoffs
(0.8 / 0.9), distress and content weights, backend endpoints, worker pool
size, and the storage path. Configs load from YAML or JSON files.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Literal, Optional

import yaml
from pydantic import BaseModel, Field, field_validator, model_validator

WEIGHT_SUM_TOL = 1e-9


class Thresholds(BaseModel):
    """Band boundaries for the three routing signals plus early-exit cutoffs."""

    confidence_high: float = 0.7
    confidence_min: float = 0.4  # below this: no content extraction, flag for review
    content_high: float = 50.0
    distress_high: float = 0.5  # strict: high means D > distress_high
    early_exit_distress: float = 0.8
    early_exit_extreme: float = 0.9


class DistressWeights(BaseModel):
    """Weights of the four distress components; must sum to 1."""

    pitch: float = 0.30
    variability: float = 0.35
    energy: float = 0.20
    jitter: float = 0.15

    @model_validator(mode="after")
    def _check_sum(self) -> "DistressWeights":
        total = self.pitch + self.variability + self.energy + self.jitter
        if abs(total - 1.0) > 1e-6:
            raise ValueError(f"distress weights must sum to 1.0, got {total}")
        return self


class ContentWeights(BaseModel):
    """Point values behind the 0-100 content indicator score."""

    hazard: dict[str, float] = Field(
        default_factory=lambda: {
            "violent_crime": 30.0,
            "medical": 25.0,
            "fire": 25.0,
            "flood": 20.0,
            "traffic": 15.0,
            "infrastructure": 10.0,
            "other": 5.0,
        }
    )
    threat: dict[str, float] = Field(
        default_factory=lambda: {"imminent": 30.0, "potential": 15.0, "none": 0.0}
    )
    vulnerable_bonus: float = 15.0
    per_person: float = 5.0
    persons_cap: float = 20.0
    escalation_bonus: float = 10.0
    score_cap: float = 100.0


class VoicingConfig(BaseModel):
    """Voiced/unvoiced decision thresholds for the pitch tracker."""

    autocorr_threshold: float = 0.45
    rms_threshold: float = 0.01
    f0_min: float = 50.0
    f0_max: float = 400.0


class BackendConfig(BaseModel):
    """One HTTP backend endpoint (transcription or LLM)."""

    url: str = ""
    timeout: float = 30.0


class ServiceConfig(BaseModel):
    host: str = "127.0.0.1"
    port: int = 8000
    api_token: Optional[str] = None  # when set, requests must carry X-API-Token


class AppConfig(BaseModel):
    """Top-level configuration consumed by the pipeline, service, and CLI."""

    thresholds: Thresholds = Field(default_factory=Thresholds)
    distress_weights: DistressWeights = Field(default_factory=DistressWeights)
    content_weights: ContentWeights = Field(default_factory=ContentWeights)
    voicing: VoicingConfig = Field(default_factory=VoicingConfig)
    asr_backend: BackendConfig = Field(default_factory=BackendConfig)
    llm_backend: BackendConfig = Field(default_factory=BackendConfig)
    backend_mode: Literal["stub", "live"] = "stub"
    fixtures_path: Optional[str] = None  # stub-mode fixture file
    worker_pool_size: int = 2
    storage_path: str = "calltriage-data"
    min_call_duration: float = 0.5
    service: ServiceConfig = Field(default_factory=ServiceConfig)
    # Response-time expectations surfaced with queue entries (display only).
    # Only the two top levels have defaults; others are deployment-specific.
    sla_hints: dict[str, Optional[str]] = Field(
        default_factory=lambda: {
            "Q1_IMMEDIATE": "within seconds",
            "Q2_ELEVATED": "within 1-2 minutes",
            "Q3_MONITOR": None,
            "Q5_ROUTINE": None,
            "Q5_REVIEW": None,
        }
    )

    @field_validator("worker_pool_size")
    @classmethod
    def _positive_pool(cls, v: int) -> int:
        if v < 1:
            raise ValueError("worker_pool_size must be >= 1")
        return v


def load_config(path: str | Path | None = None) -> AppConfig:
    """Load configuration from a YAML/JSON file, or defaults when path is None."""
    if path is None:
        return AppConfig()
    path = Path(path)
    text = path.read_text()
    if path.suffix in (".yaml", ".yml"):
        data = yaml.safe_load(text) or {}
    else:
        data = json.loads(text)
    return AppConfig.model_validate(data)
