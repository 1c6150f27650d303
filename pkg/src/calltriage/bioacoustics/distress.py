"""Composite vocal distress score.

Four saturating components are combined by fixed weights:

    P = clamp((f0_mean - B) / R)      pitch elevation, sex-adaptive (B, R)
    V = clamp(cv / 0.5)               pitch instability
    E = clamp(energy / 0.1)           intensity
    J = clamp(jitter / 0.02)          perturbation

    D = 0.30*P + 0.35*V + 0.20*E + 0.15*J

The (B, R) baseline adapts on a pitch heuristic over the first three seconds
of voiced speech: below 165 Hz reads as an estimated-male baseline (120, 80),
otherwise estimated-female (200, 100). D above 0.5 flags high distress.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..config import DistressWeights
from .features import AcousticFeatures

SEX_SPLIT_HZ = 165.0
MALE_BASELINE = (120.0, 80.0)
FEMALE_BASELINE = (200.0, 100.0)

CV_SATURATION = 0.5
ENERGY_SATURATION = 0.1
JITTER_SATURATION = 0.02

HIGH_DISTRESS_THRESHOLD = 0.5


class SexCategory(enum.Enum):
    ESTIMATED_MALE = "estimated_male"
    ESTIMATED_FEMALE = "estimated_female"


@dataclass(frozen=True)
class SexEstimate:
    category: SexCategory
    baseline_b: float  # Hz
    range_r: float  # Hz


@dataclass(frozen=True)
class DistressScore:
    pitch_elevation: float  # P
    pitch_instability: float  # V
    energy: float  # E
    perturbation: float  # J
    score: float  # D
    high_distress: bool


def estimate_sex(features: AcousticFeatures) -> SexEstimate:
    """Baseline heuristic from opening-window pitch; strict < 165 Hz is male."""
    if features.f0_init_mean < SEX_SPLIT_HZ:
        b, r = MALE_BASELINE
        return SexEstimate(SexCategory.ESTIMATED_MALE, b, r)
    b, r = FEMALE_BASELINE
    return SexEstimate(SexCategory.ESTIMATED_FEMALE, b, r)


def compute_distress(
    features: AcousticFeatures,
    sex: SexEstimate,
    weights: DistressWeights | None = None,
    high_threshold: float = HIGH_DISTRESS_THRESHOLD,
) -> DistressScore:
    weights = weights or DistressWeights()

    p = _clamp01((features.f0_mean - sex.baseline_b) / sex.range_r)
    v = _clamp01(features.f0_cv / CV_SATURATION)
    e = _clamp01(features.energy_mean / ENERGY_SATURATION)
    j = _clamp01(features.jitter / JITTER_SATURATION)

    d = (
        weights.pitch * p
        + weights.variability * v
        + weights.energy * e
        + weights.jitter * j
    )
    return DistressScore(
        pitch_elevation=p,
        pitch_instability=v,
        energy=e,
        perturbation=j,
        score=d,
        high_distress=d > high_threshold,
    )


def _clamp01(x: float) -> float:
    return min(1.0, max(0.0, x))
