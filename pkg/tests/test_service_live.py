"""Live-socket checks: real uvicorn server, incremental SSE delivery."""

import json
import socket
import threading
import time

import httpx
import pytest
import uvicorn

from calltriage.audio.ingest import encode_wav
from calltriage.config import AppConfig
from calltriage.demo import calm_signal
from calltriage.service.app import create_app

from conftest import LOW_CLASSIFICATION, stub_fixture_entry

CALM_WAV = encode_wav(calm_signal())
FIXTURES = {
    "calls": {"routine": stub_fixture_entry("pothole report", 0.9, LOW_CLASSIFICATION)}
}


def free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


@pytest.fixture
def live_server(tmp_path):
    config = AppConfig(storage_path=str(tmp_path / "data"))
    app = create_app(config, fixtures=FIXTURES)
    port = free_port()
    server = uvicorn.Server(
        uvicorn.Config(app, host="127.0.0.1", port=port, log_level="warning")
    )
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.monotonic() + 10
    while not server.started:
        if time.monotonic() > deadline:
            pytest.fail("server did not start")
        time.sleep(0.01)
    yield f"http://127.0.0.1:{port}"
    server.should_exit = True
    thread.join(timeout=10)


def test_sse_frames_arrive_while_stream_open(live_server):
    frames = []
    stream_open = threading.Event()

    def reader():
        with httpx.stream(
            "GET", f"{live_server}/events", timeout=httpx.Timeout(5, read=20)
        ) as response:
            assert response.headers["content-type"].startswith("text/event-stream")
            stream_open.set()
            for line in response.iter_lines():
                if line.startswith("data:"):
                    frames.append(json.loads(line[5:]))
                if len(frames) >= 2:
                    return

    thread = threading.Thread(target=reader, daemon=True)
    thread.start()
    assert stream_open.wait(timeout=10)

    response = httpx.post(
        f"{live_server}/calls?source_id=routine", content=CALM_WAV, timeout=10
    )
    assert response.status_code == 202
    call_id = response.json()["call_id"]

    # wait for the enqueue frame, then claim to trigger a second frame
    deadline = time.monotonic() + 15
    while len(frames) < 1 and time.monotonic() < deadline:
        time.sleep(0.05)
    assert frames and frames[0]["event_type"] == "enqueue"

    httpx.post(
        f"{live_server}/calls/{call_id}/claim",
        json={"dispatcher_id": "d1"},
        timeout=10,
    )
    thread.join(timeout=15)
    assert len(frames) == 2
    assert frames[1]["event_type"] == "claim"
    assert frames[1]["call_id"] == call_id


def test_full_lifecycle_over_live_http(live_server):
    response = httpx.post(
        f"{live_server}/calls?source_id=routine", content=CALM_WAV, timeout=10
    )
    call_id = response.json()["call_id"]
    deadline = time.monotonic() + 15
    while time.monotonic() < deadline:
        record = httpx.get(f"{live_server}/calls/{call_id}", timeout=10).json()
        if record["status"] == "QUEUED":
            break
        time.sleep(0.05)
    assert record["status"] == "QUEUED"
    queue = httpx.get(f"{live_server}/queue", timeout=10).json()["entries"]
    assert queue[0]["call_id"] == call_id
