from .ingest import (
    CANONICAL_RATE,
    MIN_DURATION_S,
    AudioBuffer,
    buffer_to_wav_bytes,
    encode_wav,
    load_audio,
)
from .framing import FRAME_LENGTH_S, HOP_S, FrameSeries, frame_count, frame_signal

__all__ = [
    "AudioBuffer",
    "FrameSeries",
    "CANONICAL_RATE",
    "MIN_DURATION_S",
    "FRAME_LENGTH_S",
    "HOP_S",
    "load_audio",
    "encode_wav",
    "buffer_to_wav_bytes",
    "frame_signal",
    "frame_count",
]
