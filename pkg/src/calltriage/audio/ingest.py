"""WAV decoding and canonicalization.

All downstream analysis assumes the canonical form produced here: mono,
16 kHz, peak-normalized float samples in [-1, 1]. Peak normalization is what
anchors the 0-1 energy scale used by the distress score, so it must happen
last (after downmix and resampling).
"""

from __future__ import annotations

import io
import wave
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

import numpy as np
from scipy.signal import resample_poly

from ..errors import EmptyAudio, UnsupportedFormat

CANONICAL_RATE = 16000
SUPPORTED_RATES = (8000, 16000, 22050, 44100, 48000)
MIN_DURATION_S = 0.5


@dataclass(frozen=True)
class AudioBuffer:
    """Canonical mono 16 kHz audio segment."""

    samples: np.ndarray  # float64 in [-1, 1]
    sample_rate: int
    duration: float
    channel_count_original: int
    source_id: str = field(default="")

    def __post_init__(self) -> None:
        if self.sample_rate != CANONICAL_RATE:
            raise ValueError(f"buffer must be canonicalized to {CANONICAL_RATE} Hz")
        peak = float(np.max(np.abs(self.samples))) if self.samples.size else 0.0
        if peak > 1.0 + 1e-9:
            raise ValueError("samples must lie in [-1, 1]")


def load_audio(
    source: Union[str, Path, bytes],
    source_id: Optional[str] = None,
    min_duration: float = MIN_DURATION_S,
) -> AudioBuffer:
    """Decode a 16-bit PCM WAV into the canonical buffer form.

    Accepts a file path or raw WAV bytes. Stereo is downmixed by averaging,
    any supported rate is resampled to 16 kHz, and amplitude is normalized to
    full scale. Raises UnsupportedFormat for non-PCM / non-16-bit / >2-channel
    input and EmptyAudio for segments shorter than ``min_duration`` seconds.
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        if source_id is None:
            source_id = path.stem
        raw = path.read_bytes()
    else:
        raw = source
        if source_id is None:
            source_id = ""

    try:
        with wave.open(io.BytesIO(raw), "rb") as wav:
            n_channels = wav.getnchannels()
            sampwidth = wav.getsampwidth()
            rate = wav.getframerate()
            n_frames = wav.getnframes()
            payload = wav.readframes(n_frames)
    except (wave.Error, EOFError) as exc:
        raise UnsupportedFormat(f"not a decodable PCM WAV: {exc}") from exc

    if n_channels not in (1, 2):
        raise UnsupportedFormat(f"unsupported channel count: {n_channels}")
    if sampwidth != 2:
        raise UnsupportedFormat(f"only 16-bit PCM supported, got {8 * sampwidth}-bit")
    if rate not in SUPPORTED_RATES:
        raise UnsupportedFormat(f"unsupported sample rate: {rate} Hz")

    samples = np.frombuffer(payload, dtype="<i2").astype(np.float64) / 32768.0
    if n_channels == 2:
        samples = samples.reshape(-1, 2).mean(axis=1)

    if samples.size / rate < min_duration:
        raise EmptyAudio(
            f"segment of {samples.size / rate:.3f}s is below the "
            f"{min_duration}s minimum"
        )

    if rate != CANONICAL_RATE:
        ratio = Fraction(CANONICAL_RATE, rate)
        samples = resample_poly(samples, ratio.numerator, ratio.denominator)

    peak = float(np.max(np.abs(samples))) if samples.size else 0.0
    if peak > 0.0:
        samples = samples / peak
    samples = np.clip(samples, -1.0, 1.0)

    return AudioBuffer(
        samples=samples,
        sample_rate=CANONICAL_RATE,
        duration=samples.size / CANONICAL_RATE,
        channel_count_original=n_channels,
        source_id=source_id,
    )


def encode_wav(samples: np.ndarray, sample_rate: int = CANONICAL_RATE) -> bytes:
    """Serialize float samples in [-1, 1] to 16-bit PCM WAV bytes."""
    clipped = np.clip(samples, -1.0, 1.0)
    pcm = (clipped * 32767.0).astype("<i2")
    out = io.BytesIO()
    with wave.open(out, "wb") as wav:
        wav.setnchannels(1)
        wav.setsampwidth(2)
        wav.setframerate(sample_rate)
        wav.writeframes(pcm.tobytes())
    return out.getvalue()


def buffer_to_wav_bytes(buf: AudioBuffer) -> bytes:
    return encode_wav(buf.samples, buf.sample_rate)
