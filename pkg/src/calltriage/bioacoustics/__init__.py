from .distress import (
    HIGH_DISTRESS_THRESHOLD,
    DistressScore,
    SexCategory,
    SexEstimate,
    compute_distress,
    estimate_sex,
)
from .features import JITTER_PATHOLOGY, AcousticFeatures, compute_features
from .pitch import estimate_f0

__all__ = [
    "AcousticFeatures",
    "DistressScore",
    "SexCategory",
    "SexEstimate",
    "compute_features",
    "compute_distress",
    "estimate_f0",
    "estimate_sex",
    "HIGH_DISTRESS_THRESHOLD",
    "JITTER_PATHOLOGY",
]
