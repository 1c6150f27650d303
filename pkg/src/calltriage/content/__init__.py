from .extraction import HttpLLMBackend, LLMBackend, StubLLMBackend, classify, render_prompt
from .schema import (
    ClassifierOutput,
    EmergencyClassification,
    ExtractedEntities,
    HazardCategory,
    LifeThreatLevel,
    SituationStatus,
    classifier_json_schema,
    parse_classifier_output,
)
from .scoring import HIGH_CONTENT_THRESHOLD, ContentScore, score_content

__all__ = [
    "EmergencyClassification",
    "ExtractedEntities",
    "ClassifierOutput",
    "HazardCategory",
    "LifeThreatLevel",
    "SituationStatus",
    "ContentScore",
    "classify",
    "score_content",
    "render_prompt",
    "parse_classifier_output",
    "classifier_json_schema",
    "LLMBackend",
    "HttpLLMBackend",
    "StubLLMBackend",
    "HIGH_CONTENT_THRESHOLD",
]
