"""In-process event bus backing the queue push channel.

Every subscriber owns a bounded queue; publishing never blocks the pipeline
(slow consumers drop oldest events rather than stalling call processing).
Frames are plain dicts: {event_type, call_id, level, timestamp}.
"""

from __future__ import annotations

import queue
import threading
from datetime import datetime, timezone
from typing import Optional


class QueueEventBus:
    def __init__(self, subscriber_capacity: int = 256):
        self._subscribers: list[queue.Queue] = []
        self._lock = threading.Lock()
        self._capacity = subscriber_capacity

    def subscribe(self) -> "queue.Queue[dict]":
        q: queue.Queue = queue.Queue(maxsize=self._capacity)
        with self._lock:
            self._subscribers.append(q)
        return q

    def unsubscribe(self, q: "queue.Queue[dict]") -> None:
        with self._lock:
            if q in self._subscribers:
                self._subscribers.remove(q)

    def publish(
        self, event_type: str, call_id: str, level: Optional[str] = None
    ) -> dict:
        frame = {
            "event_type": event_type,
            "call_id": call_id,
            "level": level,
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }
        with self._lock:
            targets = list(self._subscribers)
        for q in targets:
            try:
                q.put_nowait(frame)
            except queue.Full:
                try:
                    q.get_nowait()
                except queue.Empty:
                    pass
                try:
                    q.put_nowait(frame)
                except queue.Full:
                    pass
        return frame
