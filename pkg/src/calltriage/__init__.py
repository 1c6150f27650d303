"""Emergency-call triage pipeline.

Three independent signals per call (transcription confidence, a semantic
content indicator score, and bio-acoustic distress) feed an eight-cell
queue-prioritization matrix for human dispatchers. The package ships the
signal extractors, the queue engine, a FastAPI dispatcher service with live
queue push, and batch/simulation tooling, all runnable fully offline.
"""

__version__ = "0.1.0"

from .asr import ConfidenceBand, Transcript, band, transcribe, utterance_confidence
from .audio import AudioBuffer, FrameSeries, frame_signal, load_audio
from .bioacoustics import (
    AcousticFeatures,
    DistressScore,
    SexEstimate,
    compute_distress,
    compute_features,
    estimate_f0,
    estimate_sex,
)
from .config import AppConfig, load_config
from .content import (
    ContentScore,
    EmergencyClassification,
    ExtractedEntities,
    classify,
    score_content,
)
from .pipeline import build_deps, process_call
from .queueing import (
    DispatchQueue,
    QueueAssignment,
    QueueLevel,
    SignalBands,
    assign_priority,
    check_early_exit,
)
from .records import CallRecord, CallStatus, TriageDecision
from .scaling import predict_wer

__all__ = [
    "AudioBuffer",
    "FrameSeries",
    "AcousticFeatures",
    "DistressScore",
    "SexEstimate",
    "Transcript",
    "ConfidenceBand",
    "EmergencyClassification",
    "ExtractedEntities",
    "ContentScore",
    "SignalBands",
    "QueueAssignment",
    "QueueLevel",
    "DispatchQueue",
    "CallRecord",
    "CallStatus",
    "TriageDecision",
    "AppConfig",
    "load_audio",
    "frame_signal",
    "estimate_f0",
    "compute_features",
    "estimate_sex",
    "compute_distress",
    "band",
    "transcribe",
    "utterance_confidence",
    "classify",
    "score_content",
    "check_early_exit",
    "assign_priority",
    "process_call",
    "build_deps",
    "load_config",
    "predict_wer",
    "__version__",
]
