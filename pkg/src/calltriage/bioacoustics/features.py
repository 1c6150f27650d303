"""Utterance-level acoustic features from a pitch-annotated frame series.

Pitch statistics, energy, and jitter are computed over voiced frames only.
Jitter here is a frame-level approximation of cycle-to-cycle period
perturbation: mean absolute difference of adjacent voiced-frame periods,
relative to the mean voiced period.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..audio.framing import FrameSeries
from ..errors import NoVoicedSpeech

INIT_WINDOW_S = 3.0
JITTER_PATHOLOGY = 0.0104  # display-only flag threshold


@dataclass(frozen=True)
class AcousticFeatures:
    f0_mean: float  # Hz, over voiced frames
    f0_std: float  # Hz, population std
    f0_cv: float  # f0_std / f0_mean
    energy_mean: float  # mean voiced-frame RMS, [0, 1]
    jitter: float  # relative period perturbation, e.g. 0.012 = 1.2%
    f0_init_mean: float  # Hz, voiced frames starting before 3 s
    voiced_fraction: float

    @property
    def jitter_above_pathology(self) -> bool:
        """Display metadata only; never enters the distress score directly."""
        return self.jitter > JITTER_PATHOLOGY


def compute_features(frames: FrameSeries) -> AcousticFeatures:
    """Summarize a pitch-annotated series; raises NoVoicedSpeech when empty."""
    voiced_idx = np.flatnonzero(frames.voiced)
    if voiced_idx.size == 0:
        raise NoVoicedSpeech("no voiced frames in segment")

    f0 = frames.f0[voiced_idx]
    f0_mean = float(np.mean(f0))
    f0_std = float(np.std(f0))
    f0_cv = f0_std / f0_mean if f0_mean > 0 else 0.0

    energy_mean = float(np.mean(frames.rms[voiced_idx]))

    jitter = _frame_jitter(frames)

    init_mask = frames.voiced & (frames.start_times < INIT_WINDOW_S)
    if np.any(init_mask):
        f0_init_mean = float(np.mean(frames.f0[init_mask]))
    else:
        f0_init_mean = f0_mean  # caller silent in the opening window

    return AcousticFeatures(
        f0_mean=f0_mean,
        f0_std=f0_std,
        f0_cv=f0_cv,
        energy_mean=energy_mean,
        jitter=jitter,
        f0_init_mean=f0_init_mean,
        voiced_fraction=frames.voiced_fraction,
    )


def _frame_jitter(frames: FrameSeries) -> float:
    """mean(|T[i+1] - T[i]|) / mean(T) over adjacent voiced-frame pairs.

    Only pairs of frames voiced in consecutive positions count; the
    denominator averages the periods of every frame that joins a pair.
    Zero when fewer than two adjacent voiced frames exist.
    """
    voiced = frames.voiced
    pair = voiced[:-1] & voiced[1:]
    if not np.any(pair):
        return 0.0
    periods = 1.0 / frames.f0
    diffs = np.abs(periods[1:] - periods[:-1])[pair]
    in_pair = np.zeros(len(frames), dtype=bool)
    in_pair[:-1] |= pair
    in_pair[1:] |= pair
    mean_period = float(np.mean(periods[in_pair]))
    return float(np.mean(diffs) / mean_period)
