"""Deterministic content indicator score.

    s_c = min(100, hazard + threat + vulnerable + scale)

where scale = min(cap, 5 * persons_affected) + 10 if escalating. Hazard
points span 30 (violent crime) down to 5 (other); a resolved or stable
situation adds nothing. All point values are configurable; the defaults are
the calibration shipped with the routing matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..config import ContentWeights
from .schema import EmergencyClassification, SituationStatus

HIGH_CONTENT_THRESHOLD = 50.0


@dataclass(frozen=True)
class ContentScore:
    hazard_points: float
    threat_points: float
    vulnerability_points: float
    scale_points: float
    score: float  # s_c in [0, 100]
    high_content: bool


def score_content(
    classification: EmergencyClassification,
    weights: ContentWeights | None = None,
    high_threshold: float = HIGH_CONTENT_THRESHOLD,
) -> ContentScore:
    weights = weights or ContentWeights()

    hazard = weights.hazard[classification.hazard_category.value]
    threat = weights.threat[classification.life_threat_level.value]
    vuln = weights.vulnerable_bonus if classification.vulnerable_population else 0.0
    scale = min(
        weights.persons_cap, weights.per_person * classification.persons_affected
    )
    if classification.situation_status is SituationStatus.ESCALATING:
        scale += weights.escalation_bonus

    total = min(weights.score_cap, hazard + threat + vuln + scale)
    return ContentScore(
        hazard_points=hazard,
        threat_points=threat,
        vulnerability_points=vuln,
        scale_points=scale,
        score=total,
        high_content=total >= high_threshold,
    )
