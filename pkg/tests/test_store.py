"""Durable store round-trips and failure surfacing."""

from datetime import datetime, timezone

import pytest

from calltriage.errors import Conflict, CorruptRecord, NotFound
from calltriage.queueing import SignalBands, assign_priority
from calltriage.records import (
    CallRecord,
    CallStatus,
    TriageDecision,
    check_transition,
)
from calltriage.store import CallStore

T0 = datetime(2025, 6, 1, tzinfo=timezone.utc)


def record(call_id="c1", status=CallStatus.PROCESSING, assignment=None):
    return CallRecord(
        call_id=call_id,
        received_at=T0,
        audio_ref=f"audio/{call_id}.wav",
        source_id=call_id,
        status=status,
        assignment=assignment,
    )


def queued_record(call_id="c1"):
    assignment = assign_priority(
        SignalBands(True, False, False), early_exit=False, assigned_at=T0
    )
    return record(call_id, CallStatus.QUEUED, assignment)


def test_roundtrip_field_equality(tmp_storage):
    store = CallStore(tmp_storage)
    original = queued_record()
    store.save(original)
    assert store.load("c1") == original


def test_roundtrip_with_triage(tmp_storage):
    store = CallStore(tmp_storage)
    rec = queued_record().model_copy(
        update={
            "status": CallStatus.TRIAGED,
            "claimed_by": "d-9",
            "triage": TriageDecision(
                protocol="ESI", esi_level=2, dispatcher_id="d-9", notes="chest pain"
            ),
        }
    )
    store.save(rec)
    loaded = store.load("c1")
    assert loaded.triage.esi_level == 2
    assert loaded.claimed_by == "d-9"


def test_load_unknown_raises_not_found(tmp_storage):
    with pytest.raises(NotFound):
        CallStore(tmp_storage).load("missing")


def test_corrupt_record_surfaces(tmp_storage):
    store = CallStore(tmp_storage)
    (store.calls_dir / "bad.json").write_text("{not json")
    with pytest.raises(CorruptRecord):
        store.load("bad")


def test_audio_roundtrip(tmp_storage):
    store = CallStore(tmp_storage)
    payload = b"RIFF....fake"
    ref = store.save_audio("c1", payload)
    assert store.load_audio("c1") == payload
    assert ref.endswith("c1.wav")


def test_audio_missing_raises(tmp_storage):
    with pytest.raises(NotFound):
        CallStore(tmp_storage).load_audio("ghost")


def test_list_records_filters_by_status(tmp_storage):
    store = CallStore(tmp_storage)
    store.save(record("p1"))
    store.save(queued_record("q1"))
    store.save(queued_record("q2"))
    assert {r.call_id for r in store.list_records(status=CallStatus.QUEUED)} == {
        "q1",
        "q2",
    }
    assert len(store.list_records()) == 3


def test_record_requires_assignment_when_queued():
    with pytest.raises(ValueError):
        record(status=CallStatus.QUEUED)


def test_transition_machine():
    check_transition(CallStatus.PROCESSING, CallStatus.QUEUED)
    check_transition(CallStatus.QUEUED, CallStatus.CLAIMED)
    check_transition(CallStatus.CLAIMED, CallStatus.TRIAGED)
    check_transition(CallStatus.TRIAGED, CallStatus.CLOSED)
    for bad in [
        (CallStatus.PROCESSING, CallStatus.CLAIMED),
        (CallStatus.QUEUED, CallStatus.TRIAGED),
        (CallStatus.CLAIMED, CallStatus.QUEUED),
        (CallStatus.CLOSED, CallStatus.PROCESSING),
        (CallStatus.QUEUED, CallStatus.QUEUED),
    ]:
        with pytest.raises(Conflict):
            check_transition(*bad)


def test_triage_decision_validation():
    with pytest.raises(ValueError):
        TriageDecision(protocol="ESI", dispatcher_id="d")  # missing level
    with pytest.raises(ValueError):
        TriageDecision(protocol="ESI", esi_level=2, start_color="RED", dispatcher_id="d")
    with pytest.raises(ValueError):
        TriageDecision(protocol="START", esi_level=3, dispatcher_id="d")
    with pytest.raises(ValueError):
        TriageDecision(protocol="ESI", esi_level=7, dispatcher_id="d")
    ok = TriageDecision(protocol="START", start_color="RED", dispatcher_id="d")
    assert ok.start_color.value == "RED"
