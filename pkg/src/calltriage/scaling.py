"""Transcription-model capacity planning.

Predicted word error rate (percent) as a function of model size and
training-data volume:

    WER = 158.06 * M^-0.255 * D^-0.269

with M in millions of parameters and D in hours of audio. The exponents say
data buys more than model size for underrepresented speech varieties, which
is what this planner is for: sizing fine-tuning corpora against candidate
model footprints.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError

WER_COEFFICIENT = 158.06
MODEL_EXPONENT = -0.255
DATA_EXPONENT = -0.269


@dataclass(frozen=True)
class ScalingLawInputs:
    model_size_m: float  # millions of parameters
    dataset_hours: float

    def __post_init__(self) -> None:
        if self.model_size_m <= 0 or self.dataset_hours <= 0:
            raise DomainError("model size and dataset hours must be positive")


def predict_wer(model_size_m: float, dataset_hours: float) -> float:
    """Predicted WER in percent; raises DomainError on non-positive inputs."""
    inputs = ScalingLawInputs(model_size_m, dataset_hours)
    return (
        WER_COEFFICIENT
        * inputs.model_size_m**MODEL_EXPONENT
        * inputs.dataset_hours**DATA_EXPONENT
    )
