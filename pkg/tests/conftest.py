"""Shared fixtures and helpers for the suite."""

from __future__ import annotations

import io
import math
import wave

import numpy as np
import pytest

from calltriage.audio.framing import FrameSeries
from calltriage.audio.ingest import CANONICAL_RATE, AudioBuffer


def make_buffer(samples: np.ndarray, source_id: str = "test") -> AudioBuffer:
    """Wrap raw float samples as a canonical buffer without file round-trip."""
    return AudioBuffer(
        samples=np.asarray(samples, dtype=float),
        sample_rate=CANONICAL_RATE,
        duration=len(samples) / CANONICAL_RATE,
        channel_count_original=1,
        source_id=source_id,
    )


def wav_bytes(
    samples: np.ndarray, sample_rate: int, channels: int = 1
) -> bytes:
    """Hand-rolled 16-bit PCM WAV serialization (independent of the package)."""
    data = np.asarray(samples)
    if channels == 2 and data.ndim == 1:
        data = np.stack([data, data], axis=1)
    pcm = (np.clip(data, -1, 1) * 32767).astype("<i2")
    out = io.BytesIO()
    with wave.open(out, "wb") as w:
        w.setnchannels(channels)
        w.setsampwidth(2)
        w.setframerate(sample_rate)
        w.writeframes(pcm.tobytes())
    return out.getvalue()


def make_series(
    f0_values,
    voiced=None,
    rms: float = 0.1,
    hop: float = 0.010,
    frame_length: float = 0.040,
) -> FrameSeries:
    """FrameSeries with hand-chosen pitch values for feature unit tests."""
    f0 = np.array([np.nan if v is None else float(v) for v in f0_values])
    n = len(f0)
    if voiced is None:
        voiced_arr = ~np.isnan(f0)
    else:
        voiced_arr = np.asarray(voiced, dtype=bool)
    return FrameSeries(
        start_times=np.arange(n) * hop,
        rms=np.full(n, rms),
        f0=f0,
        voiced=voiced_arr,
        frame_length=frame_length,
        hop=hop,
    )


def stub_fixture_entry(text: str, confidence: float, classification: dict,
                       entities: dict | None = None) -> dict:
    entry = {
        "transcript": {
            "text": text,
            "token_logprobs": [math.log(confidence)] * 5,
            "language": "en",
        },
        "classification": classification,
    }
    if entities is not None:
        entry["entities"] = entities
    return entry


LOW_CLASSIFICATION = {
    "hazard_category": "infrastructure",
    "life_threat_level": "none",
    "vulnerable_population": False,
    "situation_status": "stable",
    "persons_affected": 0,
}

HIGH_CLASSIFICATION = {
    "hazard_category": "fire",
    "life_threat_level": "imminent",
    "vulnerable_population": True,
    "situation_status": "stable",
    "persons_affected": 2,
}


@pytest.fixture
def tmp_storage(tmp_path):
    return tmp_path / "storage"
