"""Deterministic signal synthesis for tests, demos, and calibration.

Synthetic pitched signals are generated by phase integration of an
instantaneous frequency contour, so the ground-truth pitch at any instant is
known exactly. That makes these the independent oracle for the pitch tracker
and the jitter measurement chain.
"""

from __future__ import annotations

from typing import Callable, Sequence, Union

import numpy as np

from .ingest import CANONICAL_RATE

FreqContour = Union[float, Callable[[np.ndarray], np.ndarray]]


def synth_pitched(
    freq: FreqContour,
    duration: float,
    sr: int = CANONICAL_RATE,
    amplitude: float = 0.8,
    harmonics: Sequence[float] = (1.0,),
) -> np.ndarray:
    """Pitched signal following the given instantaneous-frequency contour.

    ``harmonics`` are relative amplitudes of the fundamental and overtones;
    the default is a pure sine. The result is peak-scaled to ``amplitude``.
    """
    t = np.arange(int(round(duration * sr))) / sr
    f = np.full_like(t, float(freq)) if not callable(freq) else freq(t)
    phase = 2.0 * np.pi * np.cumsum(f) / sr
    signal = np.zeros_like(t)
    for k, amp in enumerate(harmonics, start=1):
        signal += amp * np.sin(k * phase)
    peak = np.max(np.abs(signal))
    if peak > 0:
        signal = signal * (amplitude / peak)
    return signal


def tone(freq_hz: float, duration: float, sr: int = CANONICAL_RATE,
         amplitude: float = 0.8) -> np.ndarray:
    """Constant-pitch sine."""
    return synth_pitched(freq_hz, duration, sr=sr, amplitude=amplitude)


def vibrato_contour(
    base_hz: float, depth: float, rate_hz: float
) -> Callable[[np.ndarray], np.ndarray]:
    """Sinusoidally modulated frequency: f(t) = base * (1 + depth*sin(2*pi*rate*t))."""

    def contour(t: np.ndarray) -> np.ndarray:
        return base_hz * (1.0 + depth * np.sin(2.0 * np.pi * rate_hz * t))

    return contour


def piecewise_contour(
    segments: Sequence[tuple[float, float]]
) -> Callable[[np.ndarray], np.ndarray]:
    """Frequency contour from (duration_s, freq_hz) segments, in order."""
    bounds = np.cumsum([d for d, _ in segments])
    freqs = np.array([f for _, f in segments])

    def contour(t: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(bounds, t, side="right")
        idx = np.clip(idx, 0, len(freqs) - 1)
        return freqs[idx]

    return contour


def white_noise(
    duration: float, rms: float, seed: int, sr: int = CANONICAL_RATE
) -> np.ndarray:
    """Seeded Gaussian noise scaled to the requested RMS (clipped to [-1, 1])."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(int(round(duration * sr)))
    x = x / np.sqrt(np.mean(x**2)) * rms
    return np.clip(x, -1.0, 1.0)


def silence(duration: float, sr: int = CANONICAL_RATE) -> np.ndarray:
    return np.zeros(int(round(duration * sr)))


def add(*signals: np.ndarray) -> np.ndarray:
    """Mix signals of possibly different lengths (zero-padded), clipped."""
    n = max(len(s) for s in signals)
    out = np.zeros(n)
    for s in signals:
        out[: len(s)] += s
    return np.clip(out, -1.0, 1.0)


def concat(*signals: np.ndarray) -> np.ndarray:
    return np.concatenate(signals)
