"""Batch engine and CLI surface."""

import json

import pytest
from click.testing import CliRunner

from calltriage.batch import batch_process, load_fixture_file, render_table
from calltriage.cli import main
from calltriage.config import AppConfig
from calltriage.demo import EXPECTED_LEVELS, write_demo_batch


@pytest.fixture(scope="module")
def demo_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("demo")
    write_demo_batch(directory)
    return directory


def strip_volatile(report: dict) -> dict:
    clone = json.loads(json.dumps(report))
    clone.pop("generated_at", None)
    for row in clone["rows"]:
        row.pop("timings", None)
    clone["summary"].pop("mean_stage_seconds", None)
    return clone


def test_demo_batch_hits_every_cell(demo_dir):
    fixtures = load_fixture_file(demo_dir / "fixtures.json")
    report = batch_process(demo_dir, AppConfig(), fixtures=fixtures)
    assert report["summary"]["files"] == 8
    assert report["summary"]["errors"] == 0
    levels = {row["file"].removesuffix(".wav"): row["level"] for row in report["rows"]}
    assert levels == EXPECTED_LEVELS
    counts = report["summary"]["level_counts"]
    assert counts["Q1_IMMEDIATE"] == 3
    assert counts["Q2_ELEVATED"] == 2
    assert counts["Q3_MONITOR"] == 1
    assert counts["Q5_ROUTINE"] == 1
    assert counts["Q5_REVIEW"] == 1


def test_batch_reproducible_modulo_timestamps(demo_dir):
    fixtures = load_fixture_file(demo_dir / "fixtures.json")
    first = batch_process(demo_dir, AppConfig(), fixtures=fixtures)
    second = batch_process(demo_dir, AppConfig(), fixtures=fixtures)
    assert strip_volatile(first) == strip_volatile(second)


def test_batch_deterministic_flag_byte_identical(demo_dir):
    fixtures = load_fixture_file(demo_dir / "fixtures.json")
    first = batch_process(demo_dir, AppConfig(), fixtures=fixtures, deterministic=True)
    second = batch_process(demo_dir, AppConfig(), fixtures=fixtures, deterministic=True)
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


def test_empty_directory(tmp_path):
    report = batch_process(tmp_path, AppConfig())
    assert report["rows"] == []
    assert report["summary"]["files"] == 0


def test_corrupt_file_isolated(demo_dir, tmp_path):
    import shutil

    work = tmp_path / "mixed"
    work.mkdir()
    shutil.copy(demo_dir / "call-hll.wav", work / "call-hll.wav")
    (work / "broken.wav").write_bytes(b"not really a wav")
    fixtures = load_fixture_file(demo_dir / "fixtures.json")
    report = batch_process(work, AppConfig(), fixtures=fixtures)
    by_file = {row["file"]: row for row in report["rows"]}
    assert "error" in by_file["broken.wav"]
    assert by_file["call-hll.wav"]["level"] == "Q5_ROUTINE"
    assert report["summary"]["errors"] == 1


def test_render_table_lists_every_row(demo_dir):
    fixtures = load_fixture_file(demo_dir / "fixtures.json")
    report = batch_process(demo_dir, AppConfig(), fixtures=fixtures)
    table = render_table(report)
    for row in report["rows"]:
        assert row["file"] in table
    assert "levels:" in table


def test_cli_process_json(demo_dir):
    runner = CliRunner()
    result = runner.invoke(
        main, ["--json", "process", str(demo_dir), "--deterministic"]
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["summary"]["files"] == 8


def test_cli_score_file(demo_dir):
    runner = CliRunner()
    result = runner.invoke(
        main,
        ["--json", "score-file", str(demo_dir / "call-hhh.wav"),
         "--fixtures", str(demo_dir / "fixtures.json")],
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["level"] == "Q1_IMMEDIATE"
    assert payload["f0_mean_hz"] > 150
    assert payload["sex_estimate"] == "estimated_male"
    assert 0 <= payload["distress"] <= 1


def test_cli_predict_wer():
    runner = CliRunner()
    result = runner.invoke(main, ["--json", "predict-wer", "--params", "1", "--hours", "1"])
    assert result.exit_code == 0
    assert json.loads(result.output)["predicted_wer_percent"] == 158.06
    bad = runner.invoke(main, ["predict-wer", "--params", "-1", "--hours", "1"])
    assert bad.exit_code == 1


def test_cli_simulate_deterministic():
    runner = CliRunner()
    args = ["--json", "simulate", "--calls", "50", "--seed", "9"]
    first = runner.invoke(main, args)
    second = runner.invoke(main, args)
    assert first.exit_code == 0
    assert first.output == second.output
    payload = json.loads(first.output)
    assert payload["n_calls"] == 50


def test_cli_make_demo(tmp_path):
    runner = CliRunner()
    result = runner.invoke(main, ["make-demo", str(tmp_path / "out")])
    assert result.exit_code == 0
    assert (tmp_path / "out" / "fixtures.json").exists()
    assert len(list((tmp_path / "out").glob("*.wav"))) == 8


def test_cli_config_file_roundtrip(tmp_path, demo_dir):
    config_path = tmp_path / "conf.yaml"
    config_path.write_text(
        "thresholds:\n  content_high: 90\nbackend_mode: stub\n"
    )
    runner = CliRunner()
    result = runner.invoke(
        main,
        ["--config", str(config_path), "--json", "process", str(demo_dir),
         "--deterministic"],
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    # with the content bar at 90, the 80-point calls stop banding high:
    # hhl -> (H,L,L) Q5_ROUTINE, lhl -> (L,L,L) Q5_REVIEW
    levels = {row["file"]: row["level"] for row in payload["rows"]}
    assert levels["call-hhl.wav"] == "Q5_ROUTINE"
    assert levels["call-lhl.wav"] == "Q5_REVIEW"
