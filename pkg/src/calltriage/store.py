"""Durable single-node call storage.

Records are one JSON file per call under ``calls/``, audio the original WAV
under ``audio/``. Writes go through a temp file and an atomic rename so a
crash never leaves a half-written record; whatever was last renamed is what
recovery sees. No external database: the deployment target must run with no
connectivity at all.
"""

from __future__ import annotations

import errno
import os
import tempfile
import threading
from collections import defaultdict
from pathlib import Path
from typing import Iterator, Optional

from .errors import CorruptRecord, NotFound, StorageFull
from .records import CallRecord, CallStatus


class CallStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.calls_dir = self.root / "calls"
        self.audio_dir = self.root / "audio"
        self.calls_dir.mkdir(parents=True, exist_ok=True)
        self.audio_dir.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.RLock] = defaultdict(threading.RLock)
        self._registry_lock = threading.Lock()

    def lock(self, call_id: str) -> threading.RLock:
        """Per-call mutation lock; all read-modify-write cycles must hold it."""
        with self._registry_lock:
            return self._locks[call_id]

    def save(self, record: CallRecord) -> None:
        path = self.calls_dir / f"{record.call_id}.json"
        payload = record.model_dump_json(indent=2)
        self._atomic_write(path, payload.encode())

    def load(self, call_id: str) -> CallRecord:
        path = self.calls_dir / f"{call_id}.json"
        if not path.exists():
            raise NotFound(call_id)
        raw = path.read_text()
        try:
            return CallRecord.model_validate_json(raw)
        except ValueError as exc:
            raise CorruptRecord(f"{call_id}: {exc}") from exc

    def exists(self, call_id: str) -> bool:
        return (self.calls_dir / f"{call_id}.json").exists()

    def save_audio(self, call_id: str, wav_bytes: bytes) -> str:
        path = self.audio_dir / f"{call_id}.wav"
        self._atomic_write(path, wav_bytes)
        return str(path)

    def load_audio(self, call_id: str) -> bytes:
        path = self.audio_dir / f"{call_id}.wav"
        if not path.exists():
            raise NotFound(f"audio for {call_id}")
        return path.read_bytes()

    def iter_records(self) -> Iterator[CallRecord]:
        for path in sorted(self.calls_dir.glob("*.json")):
            yield self.load(path.stem)

    def list_records(
        self, status: Optional[CallStatus] = None
    ) -> list[CallRecord]:
        records = list(self.iter_records())
        if status is not None:
            records = [r for r in records if r.status is status]
        return records

    def _atomic_write(self, path: Path, data: bytes) -> None:
        try:
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
            try:
                with os.fdopen(fd, "wb") as handle:
                    handle.write(data)
                os.replace(tmp, path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        except OSError as exc:
            if exc.errno == errno.ENOSPC:
                raise StorageFull(str(path)) from exc
            raise
