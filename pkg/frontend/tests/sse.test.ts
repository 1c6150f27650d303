/** SSE parsing (against the recorded wire bytes) and reconnect behavior. */

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";
import { EventSubscription, SSEParser } from "../src/sse.js";
import type { EventFrame } from "../src/types.js";

const RECORDED = readFileSync(new URL("./fixtures/events.txt", import.meta.url), "utf-8");

describe("SSE parser", () => {
  it("parses every data frame from the recorded stream", () => {
    const parser = new SSEParser();
    // recorded file collapses blank separators; restore wire format
    const wire = RECORDED.split("\n").map((l) => l + "\n").join("\n");
    const frames = parser.feed(wire);
    expect(frames.length).toBeGreaterThanOrEqual(5);
    expect(frames[0]!.event_type).toBe("enqueue");
    expect(frames.map((f) => f.event_type)).toContain("claim");
    for (const frame of frames) {
      expect(frame.call_id).toBeTruthy();
      expect(frame.timestamp).toBeTruthy();
    }
  });

  it("handles frames split across arbitrary chunk boundaries", () => {
    const wire = 'data: {"event_type": "enqueue", "call_id": "abc", "level": "Q1_IMMEDIATE", "timestamp": "t"}\n\n';
    for (const size of [1, 3, 7, 1000]) {
      const parser = new SSEParser();
      const frames: EventFrame[] = [];
      for (let i = 0; i < wire.length; i += size) {
        frames.push(...parser.feed(wire.slice(i, i + size)));
      }
      expect(frames).toHaveLength(1);
      expect(frames[0]!.call_id).toBe("abc");
    }
  });

  it("ignores comments and malformed data lines", () => {
    const parser = new SSEParser();
    expect(parser.feed(": keepalive\n\n")).toEqual([]);
    expect(parser.feed("data: {broken json\n\n")).toEqual([]);
  });
});

function streamOf(...chunks: string[]): ReadableStream<Uint8Array> {
  const encoder = new TextEncoder();
  return new ReadableStream({
    start(controller) {
      for (const chunk of chunks) controller.enqueue(encoder.encode(chunk));
      controller.close();
    },
  });
}

describe("event subscription", () => {
  it("delivers frames, flags the drop, and reconnects with backoff", async () => {
    const frames: EventFrame[] = [];
    const liveness: boolean[] = [];
    const sleeps: number[] = [];
    let connection = 0;

    const fetchImpl = (async () => {
      connection += 1;
      if (connection === 2) throw new Error("network down");
      return new Response(
        streamOf(
          'data: {"event_type": "enqueue", "call_id": "c' +
            connection +
            '", "level": "Q1_IMMEDIATE", "timestamp": "t"}\n\n',
        ),
        { status: 200 },
      );
    }) as unknown as typeof fetch;

    const subscription = new EventSubscription(
      "/events",
      {
        onFrame: (f) => frames.push(f),
        onLiveChange: (live) => liveness.push(live),
      },
      {
        fetchImpl,
        initialBackoffMs: 10,
        maxBackoffMs: 40,
        sleep: async (ms) => {
          sleeps.push(ms);
          if (sleeps.length >= 3) subscription.stop();
        },
      },
    );
    await subscription.run();

    expect(frames.map((f) => f.call_id)).toContain("c1");
    expect(liveness[0]).toBe(true); // connected
    expect(liveness).toContain(false); // stale on drop
    // exponential: 10 (after stream end), 20 (after failure), then reset on success
    expect(sleeps[0]).toBe(10);
    expect(sleeps[1]).toBe(20);
  });
});
