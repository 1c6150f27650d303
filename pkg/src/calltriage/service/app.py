"""Dispatcher-facing HTTP API.

Audio arrives as a raw ``audio/wav`` body; everything else is JSON. The
``/events`` endpoint is a long-lived SSE stream of queue activity
({event_type, call_id, level, timestamp} frames) so consoles update without
polling. When an API token is configured, every request must carry it in
``X-API-Token``.
"""

from __future__ import annotations

import json
import queue as queue_mod
from contextlib import asynccontextmanager
from datetime import datetime, timezone
from typing import Optional

from fastapi import Depends, FastAPI, Header, HTTPException, Query, Request, Response
from fastapi.responses import JSONResponse, StreamingResponse
from pydantic import ValidationError

from ..config import AppConfig
from ..errors import (
    Conflict,
    CorruptRecord,
    DuplicateCall,
    EmptyAudio,
    NotFound,
    UnsupportedFormat,
)
from ..records import CallStatus, TriageDecision, build_cad_package
from .processor import CallProcessor
from .schemas import (
    ClaimRequest,
    QueueView,
    SubmitResponse,
    TriageRequest,
    queue_entry_view,
)

SSE_KEEPALIVE_S = 15.0


def create_app(
    config: AppConfig | None = None,
    processor: Optional[CallProcessor] = None,
    fixtures: Optional[dict] = None,
) -> FastAPI:
    config = config or AppConfig()
    proc = processor or CallProcessor(config, fixtures=fixtures)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        proc.recover()
        yield
        proc.shutdown()

    app = FastAPI(title="calltriage", version="0.1.0", lifespan=lifespan)
    app.state.processor = proc
    app.state.config = config

    def require_token(x_api_token: Optional[str] = Header(default=None)) -> None:
        expected = config.service.api_token
        if expected is not None and x_api_token != expected:
            raise HTTPException(status_code=401, detail="missing or invalid API token")

    guarded = [Depends(require_token)]

    @app.exception_handler(NotFound)
    async def _not_found(request: Request, exc: NotFound):
        return JSONResponse(status_code=404, content={"error": "not_found", "detail": str(exc)})

    @app.exception_handler(Conflict)
    async def _conflict(request: Request, exc: Conflict):
        return JSONResponse(status_code=409, content={"error": "conflict", "detail": str(exc)})

    @app.exception_handler(DuplicateCall)
    async def _duplicate(request: Request, exc: DuplicateCall):
        return JSONResponse(status_code=409, content={"error": "duplicate_call", "detail": str(exc)})

    @app.exception_handler(UnsupportedFormat)
    async def _bad_format(request: Request, exc: UnsupportedFormat):
        return JSONResponse(status_code=400, content={"error": "unsupported_format", "detail": str(exc)})

    @app.exception_handler(EmptyAudio)
    async def _empty_audio(request: Request, exc: EmptyAudio):
        return JSONResponse(status_code=400, content={"error": "empty_audio", "detail": str(exc)})

    @app.exception_handler(CorruptRecord)
    async def _corrupt(request: Request, exc: CorruptRecord):
        return JSONResponse(status_code=500, content={"error": "corrupt_record", "detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/config", dependencies=guarded)
    def get_config() -> dict:
        """Client-facing tunables; consoles must mirror these, never hard-code."""
        return {
            "thresholds": config.thresholds.model_dump(),
            "sla_hints": config.sla_hints,
            "backend_mode": config.backend_mode,
        }

    @app.post("/calls", response_model=SubmitResponse, status_code=202, dependencies=guarded)
    async def submit_call(request: Request, source_id: str = Query(default="")):
        wav_bytes = await request.body()
        if not wav_bytes:
            raise HTTPException(status_code=400, detail="empty request body")
        call_id = proc.submit_wav(wav_bytes, source_id=source_id)
        return SubmitResponse(call_id=call_id)

    @app.get("/queue", response_model=QueueView, dependencies=guarded)
    def get_queue():
        now = datetime.now(timezone.utc)
        entries = [
            queue_entry_view(entry, now, config.sla_hints)
            for entry in proc.queue_snapshot()
        ]
        return QueueView(entries=entries)

    @app.get("/calls", dependencies=guarded)
    def list_calls(status: Optional[str] = Query(default=None)):
        wanted = CallStatus(status) if status else None
        summaries = []
        for record in proc.store.list_records(status=wanted):
            summaries.append(
                {
                    "call_id": record.call_id,
                    "received_at": record.received_at.isoformat(),
                    "status": record.status.value,
                    "level": record.assignment.level.value if record.assignment else None,
                    "source_id": record.source_id,
                }
            )
        return {"calls": summaries}

    @app.get("/calls/{call_id}", dependencies=guarded)
    def get_call(call_id: str):
        record = proc.get_record(call_id)
        return record.model_dump(mode="json")

    @app.post("/calls/{call_id}/claim", dependencies=guarded)
    def claim_call(call_id: str, body: ClaimRequest):
        record = proc.claim(call_id, body.dispatcher_id)
        return record.model_dump(mode="json")

    @app.post("/queue/claim-next", dependencies=guarded)
    def claim_next(body: ClaimRequest):
        record = proc.claim_next(body.dispatcher_id)
        if record is None:
            return JSONResponse(status_code=200, content={"call": None})
        return {"call": record.model_dump(mode="json")}

    @app.post("/calls/{call_id}/triage", dependencies=guarded)
    def submit_triage(call_id: str, body: TriageRequest):
        try:
            decision = TriageDecision(
                protocol=body.protocol,
                esi_level=body.esi_level,
                start_color=body.start_color,
                dispatcher_id=body.dispatcher_id,
                notes=body.notes,
            )
        except ValidationError as exc:
            return JSONResponse(
                status_code=422,
                content={"error": "validation_error", "detail": str(exc)},
            )
        record = proc.submit_triage(call_id, decision)
        return record.model_dump(mode="json")

    @app.post("/calls/{call_id}/close", dependencies=guarded)
    def close_call(call_id: str):
        record = proc.close_call(call_id)
        return record.model_dump(mode="json")

    @app.get("/calls/{call_id}/audio", dependencies=guarded)
    def get_audio(call_id: str):
        wav = proc.store.load_audio(call_id)
        return Response(content=wav, media_type="audio/wav")

    @app.get("/calls/{call_id}/cad", dependencies=guarded)
    def export_cad(call_id: str):
        record = proc.get_record(call_id)
        return build_cad_package(record)

    @app.get("/events", dependencies=guarded)
    def event_stream(limit: Optional[int] = Query(default=None, ge=1)):
        """Queue push channel. Endless by default; ``limit`` closes the
        stream after that many frames (buffered clients, debugging)."""
        subscriber = proc.events.subscribe()

        def stream():
            sent = 0
            try:
                yield ": connected\n\n"
                while limit is None or sent < limit:
                    try:
                        frame = subscriber.get(timeout=SSE_KEEPALIVE_S)
                        yield f"data: {json.dumps(frame)}\n\n"
                        sent += 1
                    except queue_mod.Empty:
                        yield ": keepalive\n\n"
            finally:
                proc.events.unsubscribe(subscriber)

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app
