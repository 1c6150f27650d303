"""Structured classification schema for emergency transcripts.

The classifier must return every field; anything outside the enums or a
negative person count is a schema violation, not a soft default. The same
pydantic model doubles as the published JSON schema (see docs/).
"""

from __future__ import annotations

import enum
import json

from pydantic import BaseModel, Field, ValidationError

from ..errors import SchemaViolation


class HazardCategory(str, enum.Enum):
    VIOLENT_CRIME = "violent_crime"
    MEDICAL = "medical"
    FIRE = "fire"
    FLOOD = "flood"
    TRAFFIC = "traffic"
    INFRASTRUCTURE = "infrastructure"
    OTHER = "other"


class LifeThreatLevel(str, enum.Enum):
    IMMINENT = "imminent"
    POTENTIAL = "potential"
    NONE = "none"


class SituationStatus(str, enum.Enum):
    ESCALATING = "escalating"
    STABLE = "stable"
    RESOLVED = "resolved"


class EmergencyClassification(BaseModel):
    model_config = {"frozen": True}

    hazard_category: HazardCategory
    life_threat_level: LifeThreatLevel
    vulnerable_population: bool
    situation_status: SituationStatus
    persons_affected: int = Field(ge=0)


class ExtractedEntities(BaseModel):
    model_config = {"frozen": True}

    location: list[str] = Field(default_factory=list)
    mechanism: list[str] = Field(default_factory=list)
    clinical_indicators: list[str] = Field(default_factory=list)
    scale_notes: list[str] = Field(default_factory=list)
    uncertainty_marked: bool = False
    phonetic_alternatives: list[str] = Field(default_factory=list)


class ClassifierOutput(BaseModel):
    """Combined payload the LLM must emit: classification plus entities."""

    classification: EmergencyClassification
    entities: ExtractedEntities = Field(default_factory=ExtractedEntities)


def parse_classifier_output(raw: str) -> ClassifierOutput:
    """Decode and validate the model's JSON reply; raises SchemaViolation."""
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"classifier reply is not JSON: {exc}") from exc
    try:
        return ClassifierOutput.model_validate(data)
    except ValidationError as exc:
        raise SchemaViolation(f"classifier reply violates schema: {exc}") from exc


def classifier_json_schema() -> dict:
    return ClassifierOutput.model_json_schema()
