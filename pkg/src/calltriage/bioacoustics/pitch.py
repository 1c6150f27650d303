"""Frame-wise pitch estimation via normalized autocorrelation.

Each 40 ms frame is DC-removed and its normalized cross-correlation (NCCF)
is evaluated over lags covering 50-400 Hz (40-320 samples at 16 kHz). A
frame is voiced when the best peak clears the correlation threshold and the
frame carries enough energy. A small per-octave penalty breaks the tie
between a true period and its integer multiples, which otherwise score
identically on clean periodic signals.
"""

from __future__ import annotations

import numpy as np

from ..audio.framing import FrameSeries, frame_matrix
from ..audio.ingest import AudioBuffer
from ..config import VoicingConfig

OCTAVE_PENALTY = 0.01  # correlation units per octave of lag


def estimate_f0(
    buf: AudioBuffer,
    frames: FrameSeries,
    voicing: VoicingConfig | None = None,
) -> FrameSeries:
    """Fill the series' f0/voiced fields in place and return it."""
    voicing = voicing or VoicingConfig()
    sr = buf.sample_rate
    frame_len = int(round(frames.frame_length * sr))
    hop = int(round(frames.hop * sr))
    n = len(frames)
    if n == 0:
        return frames

    lag_min = int(np.ceil(sr / voicing.f0_max))
    lag_max = int(np.floor(sr / voicing.f0_min))

    mat = frame_matrix(buf.samples, frame_len, hop, n)
    mat = mat - mat.mean(axis=1, keepdims=True)

    corr = _nccf(mat, lag_min, lag_max)
    lags = np.arange(lag_min, lag_max + 1)
    scores = corr - OCTAVE_PENALTY * np.log2(lags / lag_min)[None, :]

    best = np.argmax(scores, axis=1)
    best_corr = corr[np.arange(n), best]

    f0 = np.full(n, np.nan)
    voiced = (best_corr >= voicing.autocorr_threshold) & (
        frames.rms >= voicing.rms_threshold
    )
    for i in np.flatnonzero(voiced):
        lag = _refine_peak(corr[i], best[i]) + lag_min
        value = sr / lag
        f0[i] = float(np.clip(value, voicing.f0_min, voicing.f0_max))

    frames.f0 = f0
    frames.voiced = voiced
    return frames


def _nccf(frames: np.ndarray, lag_min: int, lag_max: int) -> np.ndarray:
    """Normalized cross-correlation per frame over [lag_min, lag_max].

    r(k) = sum_t x[t] x[t+k] / sqrt(sum_{t<N-k} x[t]^2 * sum_{t>=k} x[t]^2),
    computed for all frames at once with an FFT for the numerator and
    cumulative sums for the energy terms.
    """
    n_frames, frame_len = frames.shape
    nfft = 1
    while nfft < frame_len + lag_max:
        nfft *= 2

    spec = np.fft.rfft(frames, nfft, axis=1)
    raw = np.fft.irfft(spec * np.conj(spec), nfft, axis=1)[:, : lag_max + 1]

    sq = frames**2
    csum = np.concatenate(
        [np.zeros((n_frames, 1)), np.cumsum(sq, axis=1)], axis=1
    )
    total = csum[:, -1:]
    lags = np.arange(lag_min, lag_max + 1)
    head = csum[:, frame_len - lags]  # energy of x[0 : N-k]
    tail = total - csum[:, lags]  # energy of x[k : N]

    denom = np.sqrt(head * tail)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(denom > 0, raw[:, lag_min : lag_max + 1] / denom, 0.0)
    return np.clip(out, -1.0, 1.0)


def _refine_peak(corr_row: np.ndarray, idx: int) -> float:
    """Parabolic interpolation around an integer peak (fractional lag offset)."""
    if idx <= 0 or idx >= len(corr_row) - 1:
        return float(idx)
    a, b, c = corr_row[idx - 1], corr_row[idx], corr_row[idx + 1]
    denom = a - 2 * b + c
    if denom == 0:
        return float(idx)
    delta = 0.5 * (a - c) / denom
    return float(idx) + float(np.clip(delta, -0.5, 0.5))
