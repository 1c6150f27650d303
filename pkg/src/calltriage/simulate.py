"""Surge-queue simulation.

A seeded discrete-event model of the deployment scenario this system exists
for: call volume exceeding dispatcher capacity. Calls arrive as a Poisson
stream, wait through a processing delay (shorter when an early-exit override
fires), then sit in the priority queue until a dispatcher frees up. The
output is wait-time distributions per level, the early-exit fraction, and
the dequeue order, all reproducible from the seed.

Signal generation is parameterized by the probability of each dimension
banding high; raw values are then drawn uniformly inside the chosen band so
that early-exit cutoffs (0.8/0.9) occur naturally within the high-distress
band.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from typing import Optional

import numpy as np

from .config import AppConfig
from .queueing import (
    REASON_EARLY_EXIT_DISTRESS_LOW_CONF,
    REASON_EARLY_EXIT_EXTREME,
    DispatchQueue,
    SignalBands,
    assign_priority,
    check_early_exit,
)

EPOCH = datetime(2025, 1, 1, tzinfo=timezone.utc)


@dataclass(frozen=True)
class BandDistribution:
    """Marginal probabilities of each signal banding high."""

    p_confidence_high: float = 0.5
    p_content_high: float = 0.3
    p_concern_high: float = 0.3


@dataclass(frozen=True)
class SimCall:
    call_id: str
    arrival_s: float
    confidence: float
    content_score: float
    distress: float


@dataclass
class SimResult:
    n_calls: int
    early_exit_fraction: float
    level_counts: dict[str, int]
    wait_stats: dict[str, dict[str, float]]  # level -> {mean, max, count}
    mean_time_to_q1_early_exit: Optional[float]
    mean_time_to_q1_standard: Optional[float]
    dequeue_order: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n_calls": self.n_calls,
            "early_exit_fraction": self.early_exit_fraction,
            "level_counts": self.level_counts,
            "wait_stats": self.wait_stats,
            "mean_time_to_q1_early_exit": self.mean_time_to_q1_early_exit,
            "mean_time_to_q1_standard": self.mean_time_to_q1_standard,
            "dequeue_order": self.dequeue_order,
        }


def generate_calls(
    n_calls: int,
    arrival_rate_per_min: float,
    distribution: BandDistribution,
    seed: int,
    config: AppConfig | None = None,
) -> list[SimCall]:
    config = config or AppConfig()
    t = config.thresholds
    rng = np.random.default_rng(seed)
    arrivals = np.cumsum(rng.exponential(60.0 / arrival_rate_per_min, n_calls))
    calls = []
    for i in range(n_calls):
        conf_high = rng.random() < distribution.p_confidence_high
        content_high = rng.random() < distribution.p_content_high
        concern_high = rng.random() < distribution.p_concern_high
        confidence = (
            rng.uniform(t.confidence_high, 1.0)
            if conf_high
            else rng.uniform(0.0, t.confidence_high)
        )
        content = (
            rng.uniform(t.content_high, 100.0)
            if content_high
            else rng.uniform(0.0, t.content_high)
        )
        distress = (
            rng.uniform(t.distress_high, 1.0)
            if concern_high
            else rng.uniform(0.0, t.distress_high)
        )
        calls.append(
            SimCall(
                call_id=f"sim-{i:04d}",
                arrival_s=float(arrivals[i]),
                confidence=float(confidence),
                content_score=float(content),
                distress=float(distress),
            )
        )
    return calls


def simulate_surge(
    calls: list[SimCall],
    n_dispatchers: int = 2,
    service_time_s: float = 120.0,
    processing_time_s: float = 55.0,
    early_exit_processing_s: float = 12.0,
    config: AppConfig | None = None,
) -> SimResult:
    """Run the queue engine over a synthetic call stream in virtual time."""
    config = config or AppConfig()
    t = config.thresholds
    queue = DispatchQueue()

    # (time, tiebreak, kind, payload); kinds: 0=enqueue, 1=dispatcher free
    events: list[tuple[float, int, int, object]] = []
    tiebreak = 0
    enqueue_times: dict[str, float] = {}
    early_flags: dict[str, bool] = {}
    levels: dict[str, str] = {}

    for call in calls:
        early = check_early_exit(call.distress, call.confidence, t)
        delay = early_exit_processing_s if early else processing_time_s
        early_flags[call.call_id] = early
        events.append((call.arrival_s + delay, tiebreak, 0, call))
        tiebreak += 1

    for _ in range(n_dispatchers):
        events.append((0.0, tiebreak, 1, None))
        tiebreak += 1
    heapq.heapify(events)

    waits: dict[str, list[float]] = {}
    dequeue_order: list[str] = []
    idle_dispatchers = 0

    def try_claim(now: float) -> None:
        nonlocal idle_dispatchers, tiebreak
        while idle_dispatchers > 0:
            entry = queue.claim_next()
            if entry is None:
                return
            idle_dispatchers -= 1
            level = entry.assignment.level.value
            waits.setdefault(level, []).append(now - enqueue_times[entry.call_id])
            dequeue_order.append(entry.call_id)
            heapq.heappush(events, (now + service_time_s, tiebreak, 1, None))
            tiebreak += 1

    while events:
        now, _, kind, payload = heapq.heappop(events)
        if kind == 1:
            idle_dispatchers += 1
            try_claim(now)
            continue
        call: SimCall = payload  # type: ignore[assignment]
        early = early_flags[call.call_id]
        bands = SignalBands(
            confidence_high=call.confidence >= t.confidence_high,
            content_high=call.content_score >= t.content_high,
            concern_high=call.distress > t.distress_high,
        )
        reason = (
            REASON_EARLY_EXIT_EXTREME
            if call.distress > t.early_exit_extreme
            else REASON_EARLY_EXIT_DISTRESS_LOW_CONF
        )
        assignment = assign_priority(
            bands,
            early_exit=early,
            assigned_at=EPOCH + timedelta(seconds=now),
            early_exit_reason=reason,
        )
        queue.enqueue(call.call_id, assignment)
        enqueue_times[call.call_id] = now
        levels[call.call_id] = assignment.level.value
        try_claim(now)

    n = len(calls)
    early_count = sum(1 for f in early_flags.values() if f)
    level_counts: dict[str, int] = {}
    for level in levels.values():
        level_counts[level] = level_counts.get(level, 0) + 1

    wait_stats = {
        level: {
            "mean": float(np.mean(values)),
            "max": float(np.max(values)),
            "count": float(len(values)),
        }
        for level, values in sorted(waits.items())
    }

    q1_early = [
        enqueue_times[c.call_id] - c.arrival_s
        for c in calls
        if levels.get(c.call_id) == "Q1_IMMEDIATE" and early_flags[c.call_id]
    ]
    q1_standard = [
        enqueue_times[c.call_id] - c.arrival_s
        for c in calls
        if levels.get(c.call_id) == "Q1_IMMEDIATE" and not early_flags[c.call_id]
    ]

    return SimResult(
        n_calls=n,
        early_exit_fraction=early_count / n if n else 0.0,
        level_counts=level_counts,
        wait_stats=wait_stats,
        mean_time_to_q1_early_exit=float(np.mean(q1_early)) if q1_early else None,
        mean_time_to_q1_standard=float(np.mean(q1_standard)) if q1_standard else None,
        dequeue_order=dequeue_order,
    )
