"""Reproducible demo batch: one synthetic call per routing-matrix cell.

Eight WAVs plus a stub fixture file. Confidence and content come from the
fixtures; vocal distress comes from the actual audio, so the batch exercises
the real bio-acoustic chain end to end. The calm profile is a steady
baseline-pitch voice (distress ~0.2); the distressed profile starts near a
male baseline then jumps high with heavy modulation (distress ~0.75, safely
inside the high band without tripping the extreme-distress override).
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .audio.ingest import encode_wav
from .audio.synth import synth_pitched

CALM_F0 = 110.0
CALM_DURATION_S = 4.0
DISTRESS_INIT_F0 = 150.0
DISTRESS_PEAK_F0 = 235.0
DISTRESS_DURATION_S = 8.0
DISTRESS_VIBRATO_DEPTH = 0.06
DISTRESS_VIBRATO_RATE = 5.0

HIGH_CONFIDENCE = 0.9
LOW_CONFIDENCE = 0.55

LOW_CONTENT = {
    "hazard_category": "infrastructure",
    "life_threat_level": "none",
    "vulnerable_population": False,
    "situation_status": "stable",
    "persons_affected": 0,
}
HIGH_CONTENT = {
    "hazard_category": "fire",
    "life_threat_level": "imminent",
    "vulnerable_population": True,
    "situation_status": "stable",
    "persons_affected": 2,
}

# cell key -> (confidence, classification, transcript text, expected level)
DEMO_CELLS = {
    "call-hll": (
        HIGH_CONFIDENCE,
        LOW_CONTENT,
        "Pothole on the main road by the market",
        "Q5_ROUTINE",
    ),
    "call-hhl": (
        HIGH_CONFIDENCE,
        HIGH_CONTENT,
        "Two children are trapped upstairs in the house fire",
        "Q2_ELEVATED",
    ),
    "call-hlh": (
        HIGH_CONFIDENCE,
        LOW_CONTENT,
        "The drain cover by my gate came loose again",
        "Q3_MONITOR",
    ),
    "call-hhh": (
        HIGH_CONFIDENCE,
        HIGH_CONTENT,
        "The fire reach the bedroom and the pickney dem inside",
        "Q1_IMMEDIATE",
    ),
    "call-lll": (
        LOW_CONFIDENCE,
        LOW_CONTENT,
        "something about a fence post by the junction",
        "Q5_REVIEW",
    ),
    "call-lhl": (
        LOW_CONFIDENCE,
        HIGH_CONTENT,
        "granny and the baby them can't get out the fire",
        "Q2_ELEVATED",
    ),
    "call-llh": (
        LOW_CONFIDENCE,
        LOW_CONTENT,
        "road wash out maybe by the standpipe",
        "Q1_IMMEDIATE",
    ),
    "call-lhh": (
        LOW_CONFIDENCE,
        HIGH_CONTENT,
        "pickney dem trap inna di fire upstairs",
        "Q1_IMMEDIATE",
    ),
}

EXPECTED_LEVELS = {key: level for key, (_, _, _, level) in DEMO_CELLS.items()}


def calm_signal() -> np.ndarray:
    """Steady near-baseline voice: low pitch elevation, no instability."""
    return synth_pitched(CALM_F0, CALM_DURATION_S)


def distressed_signal() -> np.ndarray:
    """Male-baseline onset, then an elevated, unstable, modulated pitch."""

    def contour(t: np.ndarray) -> np.ndarray:
        base = np.where(t < 3.0, DISTRESS_INIT_F0, DISTRESS_PEAK_F0)
        wobble = 1.0 + DISTRESS_VIBRATO_DEPTH * np.sin(
            2.0 * np.pi * DISTRESS_VIBRATO_RATE * t
        )
        return base * wobble

    return synth_pitched(contour, DISTRESS_DURATION_S)


def _concern_high(key: str) -> bool:
    return key.endswith("h")


def write_demo_batch(directory: str | Path) -> dict[str, str]:
    """Write the eight WAVs and fixtures.json; returns expected levels per call."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    calm = encode_wav(calm_signal())
    distressed = encode_wav(distressed_signal())

    fixture_calls = {}
    for key, (confidence, classification, text, _level) in DEMO_CELLS.items():
        wav = distressed if _concern_high(key) else calm
        (directory / f"{key}.wav").write_bytes(wav)
        fixture_calls[key] = {
            "transcript": {
                "text": text,
                "token_logprobs": [math.log(confidence)] * 6,
                "language": "en",
            },
            "classification": classification,
            "entities": _demo_entities(text),
        }

    fixtures = {"calls": fixture_calls}
    (directory / "fixtures.json").write_text(json.dumps(fixtures, indent=2))
    return dict(EXPECTED_LEVELS)


def _demo_entities(text: str) -> dict:
    entities: dict = {
        "location": [],
        "mechanism": [],
        "clinical_indicators": [],
        "scale_notes": [],
        "uncertainty_marked": False,
        "phonetic_alternatives": [],
    }
    lowered = text.lower()
    if "fire" in lowered:
        entities["mechanism"].append("structure fire")
    if "road" in lowered or "junction" in lowered or "standpipe" in lowered:
        entities["location"].append("roadway reference")
    if "pickney" in lowered or "children" in lowered or "baby" in lowered:
        entities["scale_notes"].append("children present")
    if "trap" in lowered or "can't get out" in lowered:
        entities["clinical_indicators"].append("persons trapped")
    return entities
