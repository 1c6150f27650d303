"""Offline batch processing of WAV directories.

Each file runs through the full pipeline; per-file failures land in that
row's ``error`` field and never abort the batch. In stub mode with a fixture
file the report is reproducible run to run, apart from wall-clock fields
(timings and the report timestamp), which ``deterministic=True`` zeroes out
for byte-stable comparisons.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from .audio import load_audio
from .config import AppConfig
from .errors import CallTriageError
from .pipeline import build_deps, process_call
from .queueing import QueueLevel
from .records import CallRecord


def batch_process(
    directory: str | Path,
    config: AppConfig,
    fixtures: Optional[dict] = None,
    deterministic: bool = False,
) -> dict:
    """Process every ``*.wav`` under ``directory`` and build the report dict."""
    directory = Path(directory)
    files = sorted(directory.glob("*.wav"))
    deps = build_deps(config, fixtures=fixtures)

    rows = []
    for path in files:
        try:
            buf = load_audio(path, min_duration=config.min_call_duration)
            record = process_call(
                buf, deps, call_id=path.stem, audio_ref=str(path)
            )
            rows.append(_row(path.name, record, deterministic))
        except CallTriageError as exc:
            rows.append(
                {
                    "file": path.name,
                    "error": f"{type(exc).__name__}: {exc}",
                }
            )

    level_counts: dict[str, int] = {level.value: 0 for level in QueueLevel}
    stage_totals: dict[str, list[float]] = {}
    for row in rows:
        if "level" in row:
            level_counts[row["level"]] += 1
        for stage, seconds in row.get("timings", {}).items():
            stage_totals.setdefault(stage, []).append(seconds)

    summary = {
        "files": len(rows),
        "errors": sum(1 for row in rows if "error" in row),
        "level_counts": level_counts,
        "mean_stage_seconds": {
            stage: (0.0 if deterministic else sum(vals) / len(vals))
            for stage, vals in sorted(stage_totals.items())
        },
    }
    generated_at = (
        "1970-01-01T00:00:00+00:00"
        if deterministic
        else datetime.now(timezone.utc).isoformat()
    )
    return {
        "generated_at": generated_at,
        "backend_mode": config.backend_mode,
        "rows": rows,
        "summary": summary,
    }


def _row(filename: str, record: CallRecord, deterministic: bool) -> dict:
    transcript = record.transcript
    distress = record.distress
    timings = (
        {stage: 0.0 for stage in record.processing_timings}
        if deterministic
        else {k: round(v, 6) for k, v in record.processing_timings.items()}
    )
    return {
        "file": filename,
        "source_id": record.source_id,
        "confidence": transcript.confidence if transcript else None,
        "band": record.confidence_band.value if transcript else None,
        "content_score": record.content_score.score if record.content_score else None,
        "distress": distress.score if distress else None,
        "components": (
            {
                "pitch_elevation": distress.pitch_elevation,
                "pitch_instability": distress.pitch_instability,
                "energy": distress.energy,
                "perturbation": distress.perturbation,
            }
            if distress
            else None
        ),
        "level": record.assignment.level.value,
        "reasons": list(record.assignment.reason_codes),
        "timings": timings,
    }


def render_table(report: dict) -> str:
    """Aligned-column text view of a batch report."""
    headers = ["file", "conf", "band", "s_c", "D", "level", "reasons"]
    lines = []
    for row in report["rows"]:
        if "error" in row and "level" not in row:
            lines.append([row["file"], "-", "-", "-", "-", "ERROR", row["error"]])
            continue
        lines.append(
            [
                row["file"],
                f"{row['confidence']:.2f}" if row["confidence"] is not None else "-",
                row["band"] or "-",
                f"{row['content_score']:.0f}" if row["content_score"] is not None else "-",
                f"{row['distress']:.3f}" if row["distress"] is not None else "-",
                row["level"],
                "; ".join(row["reasons"]),
            ]
        )
    widths = [
        max(len(headers[i]), *(len(line[i]) for line in lines)) if lines else len(headers[i])
        for i in range(len(headers))
    ]
    out = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers))]
    out.append("  ".join("-" * w for w in widths))
    for line in lines:
        out.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(line)))
    counts = report["summary"]["level_counts"]
    out.append("")
    out.append(
        "levels: "
        + "  ".join(f"{level}={count}" for level, count in counts.items() if count)
    )
    return "\n".join(out)


def load_fixture_file(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())
