"""Short-time framing of canonical audio.

Frames are 40 ms with a 10 ms hop: 40 ms guarantees at least two periods of
the lowest tracked pitch (50 Hz) for autocorrelation. This module only
allocates the series and fills per-frame RMS; pitch and voicing are filled
by the bio-acoustic layer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ingest import AudioBuffer

FRAME_LENGTH_S = 0.040
HOP_S = 0.010


@dataclass
class FrameSeries:
    """Per-frame analysis grid: start time, RMS, pitch, and voicing."""

    start_times: np.ndarray  # seconds, constant hop
    rms: np.ndarray  # [0, 1]
    f0: np.ndarray  # Hz; NaN where unvoiced
    voiced: np.ndarray  # bool
    frame_length: float
    hop: float

    def __len__(self) -> int:
        return len(self.start_times)

    @property
    def voiced_fraction(self) -> float:
        if len(self) == 0:
            return 0.0
        return float(np.count_nonzero(self.voiced)) / len(self)


def frame_count(n_samples: int, sample_rate: int) -> int:
    """floor((duration - frame_length) / hop) + 1, in sample units."""
    frame_len = int(round(FRAME_LENGTH_S * sample_rate))
    hop = int(round(HOP_S * sample_rate))
    if n_samples < frame_len:
        return 0
    return (n_samples - frame_len) // hop + 1


def frame_signal(buf: AudioBuffer) -> FrameSeries:
    """Slice the buffer into the analysis grid and compute per-frame RMS."""
    sr = buf.sample_rate
    frame_len = int(round(FRAME_LENGTH_S * sr))
    hop = int(round(HOP_S * sr))
    n = frame_count(len(buf.samples), sr)

    starts = np.arange(n) * hop
    frames = frame_matrix(buf.samples, frame_len, hop, n)
    rms = np.sqrt(np.mean(frames**2, axis=1)) if n else np.zeros(0)

    return FrameSeries(
        start_times=starts / sr,
        rms=rms,
        f0=np.full(n, np.nan),
        voiced=np.zeros(n, dtype=bool),
        frame_length=FRAME_LENGTH_S,
        hop=HOP_S,
    )


def frame_matrix(samples: np.ndarray, frame_len: int, hop: int, n: int) -> np.ndarray:
    """(n, frame_len) view of the signal; rows are consecutive frames."""
    if n == 0:
        return np.zeros((0, frame_len))
    idx = np.arange(frame_len)[None, :] + (np.arange(n) * hop)[:, None]
    return samples[idx]
