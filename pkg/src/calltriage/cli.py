"""Command-line tooling around the core pipeline and service.

    calltriage process <dir>        batch-score a directory of WAVs
    calltriage score-file <wav>     full signal dump for one call
    calltriage predict-wer          scaling-law planning utility
    calltriage simulate             seeded surge-queue simulation
    calltriage make-demo <dir>      write the 8-cell demo batch
    calltriage serve                run the dispatcher service
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .audio import load_audio
from .batch import batch_process, load_fixture_file, render_table
from .config import AppConfig, load_config
from .demo import write_demo_batch
from .errors import CallTriageError, DomainError
from .pipeline import build_deps, process_call
from .scaling import predict_wer
from .simulate import BandDistribution, generate_calls, simulate_surge


def _load(ctx_config: str | None, backend_mode: str | None) -> AppConfig:
    config = load_config(ctx_config)
    if backend_mode:
        config = config.model_copy(update={"backend_mode": backend_mode})
    return config


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="YAML or JSON configuration file.")
@click.option("--backend-mode", type=click.Choice(["stub", "live"]), default=None)
@click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of text.")
@click.pass_context
def main(ctx: click.Context, config_path: str | None, backend_mode: str | None,
         as_json: bool) -> None:
    ctx.ensure_object(dict)
    ctx.obj["config"] = _load(config_path, backend_mode)
    ctx.obj["json"] = as_json


@main.command("process")
@click.argument("directory", type=click.Path(exists=True, file_okay=False))
@click.option("--fixtures", "fixtures_path", type=click.Path(exists=True), default=None,
              help="Stub fixture file (defaults to <dir>/fixtures.json when present).")
@click.option("--deterministic", is_flag=True,
              help="Zero out timings and the report timestamp for stable diffs.")
@click.pass_context
def process_cmd(ctx: click.Context, directory: str, fixtures_path: str | None,
                deterministic: bool) -> None:
    """Process every WAV in DIRECTORY and print a scored report."""
    config: AppConfig = ctx.obj["config"]
    fixtures = None
    if config.backend_mode == "stub":
        candidate = fixtures_path or config.fixtures_path
        if candidate is None and (Path(directory) / "fixtures.json").exists():
            candidate = str(Path(directory) / "fixtures.json")
        if candidate:
            fixtures = load_fixture_file(candidate)
    report = batch_process(directory, config, fixtures=fixtures,
                           deterministic=deterministic)
    if ctx.obj["json"]:
        click.echo(json.dumps(report, indent=2))
    else:
        click.echo(render_table(report))


@main.command("score-file")
@click.argument("wav", type=click.Path(exists=True, dir_okay=False))
@click.option("--fixtures", "fixtures_path", type=click.Path(exists=True), default=None)
@click.pass_context
def score_file_cmd(ctx: click.Context, wav: str, fixtures_path: str | None) -> None:
    """Score one WAV and dump every signal as a flat record."""
    config: AppConfig = ctx.obj["config"]
    fixtures = load_fixture_file(fixtures_path) if fixtures_path else None
    deps = build_deps(config, fixtures=fixtures)
    try:
        buf = load_audio(wav, min_duration=config.min_call_duration)
        record = process_call(buf, deps, call_id=Path(wav).stem, audio_ref=wav)
    except CallTriageError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(1)

    flat = {
        "file": wav,
        "source_id": record.source_id,
        "level": record.assignment.level.value,
        "early_exit": record.assignment.early_exit,
        "reasons": list(record.assignment.reason_codes),
        "confidence": record.transcript.confidence if record.transcript else None,
        "band": record.confidence_band.value if record.transcript else None,
        "text": record.transcript.text if record.transcript else None,
        "content_score": record.content_score.score if record.content_score else None,
        "distress": record.distress.score if record.distress else None,
        "high_distress": record.distress.high_distress if record.distress else None,
    }
    if record.features:
        flat.update(
            {
                "f0_mean_hz": record.features.f0_mean,
                "f0_std_hz": record.features.f0_std,
                "f0_cv": record.features.f0_cv,
                "f0_init_mean_hz": record.features.f0_init_mean,
                "energy_mean": record.features.energy_mean,
                "jitter": record.features.jitter,
                "jitter_above_pathology": record.features.jitter_above_pathology,
                "voiced_fraction": record.features.voiced_fraction,
                "sex_estimate": record.sex_estimate.category.value,
            }
        )
    if record.distress:
        flat.update(
            {
                "pitch_elevation": record.distress.pitch_elevation,
                "pitch_instability": record.distress.pitch_instability,
                "energy_component": record.distress.energy,
                "perturbation": record.distress.perturbation,
            }
        )
    if ctx.obj["json"]:
        click.echo(json.dumps(flat, indent=2))
    else:
        for key, value in flat.items():
            click.echo(f"{key}: {value}")


@main.command("predict-wer")
@click.option("--params", "model_size_m", type=float, required=True,
              help="Model size in millions of parameters.")
@click.option("--hours", "dataset_hours", type=float, required=True,
              help="Training audio in hours.")
@click.pass_context
def predict_wer_cmd(ctx: click.Context, model_size_m: float, dataset_hours: float) -> None:
    """Predicted word error rate (percent) for a model/data budget."""
    try:
        wer = predict_wer(model_size_m, dataset_hours)
    except DomainError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    if ctx.obj["json"]:
        click.echo(json.dumps({"model_size_m": model_size_m,
                               "dataset_hours": dataset_hours,
                               "predicted_wer_percent": wer}))
    else:
        click.echo(f"predicted WER: {wer:.2f}%")


@main.command("simulate")
@click.option("--calls", "n_calls", type=int, default=100)
@click.option("--seed", type=int, default=0)
@click.option("--rate", "arrival_rate", type=float, default=6.0,
              help="Arrivals per minute.")
@click.option("--dispatchers", type=int, default=2)
@click.option("--service-time", type=float, default=120.0,
              help="Dispatcher handling seconds per call.")
@click.option("--p-confidence-high", type=float, default=0.5)
@click.option("--p-content-high", type=float, default=0.3)
@click.option("--p-concern-high", type=float, default=0.3)
@click.pass_context
def simulate_cmd(ctx: click.Context, n_calls: int, seed: int, arrival_rate: float,
                 dispatchers: int, service_time: float, p_confidence_high: float,
                 p_content_high: float, p_concern_high: float) -> None:
    """Simulate a surge stream through the queue engine (seeded)."""
    config: AppConfig = ctx.obj["config"]
    distribution = BandDistribution(
        p_confidence_high=p_confidence_high,
        p_content_high=p_content_high,
        p_concern_high=p_concern_high,
    )
    calls = generate_calls(n_calls, arrival_rate, distribution, seed, config)
    result = simulate_surge(calls, n_dispatchers=dispatchers,
                            service_time_s=service_time, config=config)
    payload = result.to_dict()
    if ctx.obj["json"]:
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(f"calls: {payload['n_calls']}")
        click.echo(f"early-exit fraction: {payload['early_exit_fraction']:.3f}")
        click.echo("levels: " + "  ".join(
            f"{k}={v}" for k, v in sorted(payload["level_counts"].items())))
        for level, stats in payload["wait_stats"].items():
            click.echo(
                f"wait {level}: mean={stats['mean']:.1f}s max={stats['max']:.1f}s "
                f"n={stats['count']:.0f}"
            )
        if payload["mean_time_to_q1_early_exit"] is not None:
            click.echo(
                "time-to-Q1 (early exit): "
                f"{payload['mean_time_to_q1_early_exit']:.1f}s"
            )
        if payload["mean_time_to_q1_standard"] is not None:
            click.echo(
                "time-to-Q1 (standard):   "
                f"{payload['mean_time_to_q1_standard']:.1f}s"
            )


@main.command("make-demo")
@click.argument("directory", type=click.Path(file_okay=False))
def make_demo_cmd(directory: str) -> None:
    """Write the eight-cell demo batch (WAVs + fixtures.json) to DIRECTORY."""
    expected = write_demo_batch(directory)
    click.echo(f"wrote {len(expected)} calls to {directory}")
    for key, level in expected.items():
        click.echo(f"  {key}.wav -> {level}")


@main.command("serve")
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.pass_context
def serve_cmd(ctx: click.Context, host: str | None, port: int | None) -> None:
    """Run the dispatcher service (blocking)."""
    import uvicorn

    from .service.app import create_app

    config: AppConfig = ctx.obj["config"]
    fixtures = None
    if config.backend_mode == "stub" and config.fixtures_path:
        fixtures = load_fixture_file(config.fixtures_path)
    app = create_app(config, fixtures=fixtures)
    uvicorn.run(
        app,
        host=host or config.service.host,
        port=port or config.service.port,
    )


if __name__ == "__main__":
    main()
