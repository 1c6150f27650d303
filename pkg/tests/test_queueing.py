"""Routing matrix, early-exit rules, and dispatch-queue ordering."""

import random
import threading
from datetime import datetime, timedelta, timezone

import pytest
from hypothesis import given, settings, strategies as st

from calltriage.errors import DuplicateCall
from calltriage.queueing import (
    CELL_TABLE,
    LEVEL_RANK,
    DispatchQueue,
    QueueLevel,
    SignalBands,
    assign_priority,
    check_early_exit,
)

T0 = datetime(2025, 6, 1, tzinfo=timezone.utc)


def bands(cell):
    return SignalBands(*cell)


EXPECTED_TABLE = {
    (True, False, False): QueueLevel.Q5_ROUTINE,
    (True, True, False): QueueLevel.Q2_ELEVATED,
    (True, False, True): QueueLevel.Q3_MONITOR,
    (True, True, True): QueueLevel.Q1_IMMEDIATE,
    (False, False, False): QueueLevel.Q5_REVIEW,
    (False, True, False): QueueLevel.Q2_ELEVATED,
    (False, False, True): QueueLevel.Q1_IMMEDIATE,
    (False, True, True): QueueLevel.Q1_IMMEDIATE,
}


def test_matrix_is_exhaustive_and_exact():
    assert set(CELL_TABLE) == set(EXPECTED_TABLE)
    for cell, level in EXPECTED_TABLE.items():
        assert assign_priority(bands(cell), early_exit=False).level is level


def test_reason_codes_carry_cell_annotations():
    a = assign_priority(bands((True, True, False)), early_exit=False)
    assert "composed reporter, urgent content" in a.reason_codes
    b = assign_priority(bands((False, False, True)), early_exit=False)
    assert "possible dialect shift" in b.reason_codes
    c = assign_priority(bands((False, False, False)), early_exit=False)
    assert "possible technical issue" in c.reason_codes


def test_no_q4_level_exists():
    assert not any(level.value.startswith("Q4") for level in QueueLevel)
    assert all(level in LEVEL_RANK for level in QueueLevel)


@pytest.mark.parametrize(
    "distress,confidence,expected",
    [
        (0.85, 0.30, True),   # high distress + very low confidence
        (0.92, 0.95, True),   # extreme distress regardless of confidence
        (0.85, 0.60, False),  # fails both rules
        (0.80, 0.30, False),  # strict >
        (0.90, 0.95, False),  # strict >
        (0.81, 0.40, False),  # confidence must be strictly below 0.4
        (0.81, 0.399, True),
        (None, 0.2, False),   # absent distress never overrides
        (0.85, None, True),   # absent confidence counts as zero
        (0.5, None, False),
    ],
)
def test_early_exit_rules(distress, confidence, expected):
    assert check_early_exit(distress, confidence) is expected


@given(st.booleans(), st.booleans(), st.booleans())
def test_early_exit_dominates_every_cell(a, b, c):
    assignment = assign_priority(bands((a, b, c)), early_exit=True)
    assert assignment.level is QueueLevel.Q1_IMMEDIATE
    assert assignment.early_exit


def test_enqueue_ordering_priority_first():
    q = DispatchQueue()
    q.enqueue("routine", assign_priority(bands((True, False, False)), False, T0))
    q.enqueue("urgent", assign_priority(bands((True, True, True)), False, T0))
    assert q.claim_next().call_id == "urgent"
    assert q.claim_next().call_id == "routine"
    assert q.claim_next() is None


def test_fifo_within_level():
    q = DispatchQueue()
    first = assign_priority(bands((True, True, True)), False, T0)
    second = assign_priority(bands((True, True, True)), False, T0 + timedelta(seconds=1))
    q.enqueue("later", second)
    q.enqueue("earlier", first)
    assert q.claim_next().call_id == "earlier"


def test_q5_flavors_share_rank_fifo():
    q = DispatchQueue()
    q.enqueue("review", assign_priority(bands((False, False, False)), False, T0))
    q.enqueue(
        "routine",
        assign_priority(bands((True, False, False)), False, T0 + timedelta(seconds=1)),
    )
    assert q.claim_next().call_id == "review"


def test_duplicate_enqueue_rejected():
    q = DispatchQueue()
    a = assign_priority(bands((True, False, False)), False, T0)
    q.enqueue("x", a)
    with pytest.raises(DuplicateCall):
        q.enqueue("x", a)


def test_remove_specific_call():
    q = DispatchQueue()
    q.enqueue("a", assign_priority(bands((True, True, True)), False, T0))
    q.enqueue("b", assign_priority(bands((True, False, False)), False, T0))
    assert q.remove("a").call_id == "a"
    assert q.remove("a") is None
    assert q.claim_next().call_id == "b"


def test_snapshot_matches_dequeue_order():
    q = DispatchQueue()
    cells = [
        ("r1", (True, False, False), 0),
        ("u1", (False, True, True), 1),
        ("m1", (True, False, True), 2),
        ("u2", (True, True, True), 3),
    ]
    for call_id, cell, offset in cells:
        q.enqueue(
            call_id,
            assign_priority(bands(cell), False, T0 + timedelta(seconds=offset)),
        )
    snap = [entry.call_id for entry in q.snapshot()]
    drained = []
    while True:
        entry = q.claim_next()
        if entry is None:
            break
        drained.append(entry.call_id)
    assert snap == drained == ["u1", "u2", "m1", "r1"]


CELLS = list(EXPECTED_TABLE)


def _random_sequence_check(seed: int, n_ops: int = 30) -> None:
    """Queue behavior vs a sorted-list oracle under a random op interleaving."""
    rng = random.Random(seed)
    q = DispatchQueue()
    oracle: list[tuple[int, datetime, int, str]] = []
    seq = 0
    for op in range(n_ops):
        if rng.random() < 0.6 or not oracle:
            call_id = f"c{seed}-{op}"
            cell = rng.choice(CELLS)
            at = T0 + timedelta(seconds=rng.randint(0, 20))
            assignment = assign_priority(bands(cell), False, at)
            q.enqueue(call_id, assignment)
            oracle.append((LEVEL_RANK[assignment.level], at, seq, call_id))
            seq += 1
        else:
            oracle.sort()
            expected = oracle.pop(0)[3]
            got = q.claim_next()
            assert got is not None and got.call_id == expected
    oracle.sort()
    while oracle:
        assert q.claim_next().call_id == oracle.pop(0)[3]
    assert q.claim_next() is None


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_random_interleavings_match_oracle(seed):
    _random_sequence_check(seed)


def test_concurrent_claims_never_double_issue():
    for trial in range(20):
        q = DispatchQueue()
        n = 40
        for i in range(n):
            q.enqueue(
                f"call-{i}",
                assign_priority(
                    bands(CELLS[i % len(CELLS)]),
                    False,
                    T0 + timedelta(seconds=i),
                ),
            )
        claimed: list[str] = []
        lock = threading.Lock()

        def worker():
            while True:
                entry = q.claim_next()
                if entry is None:
                    return
                with lock:
                    claimed.append(entry.call_id)

        threads = [threading.Thread(target=worker) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert len(claimed) == n
        assert len(set(claimed)) == n
