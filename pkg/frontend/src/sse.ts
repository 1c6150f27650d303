/** Server-sent-events subscription with reconnect and staleness tracking.
 *
 * Uses fetch + ReadableStream instead of EventSource so the API token header
 * can be attached and the transport is injectable for tests.
 */

import type { EventFrame } from "./types.js";

/** Incremental SSE wire parser: feed text chunks, collect `data:` frames. */
export class SSEParser {
  private buffer = "";

  feed(chunk: string): EventFrame[] {
    this.buffer += chunk;
    const frames: EventFrame[] = [];
    let index: number;
    while ((index = this.buffer.indexOf("\n\n")) >= 0) {
      const block = this.buffer.slice(0, index);
      this.buffer = this.buffer.slice(index + 2);
      for (const line of block.split("\n")) {
        if (line.startsWith("data:")) {
          try {
            frames.push(JSON.parse(line.slice(5).trim()) as EventFrame);
          } catch {
            /* skip malformed frame */
          }
        }
      }
    }
    return frames;
  }
}

export interface SubscriptionHandlers {
  onFrame(frame: EventFrame): void;
  /** false while the channel is down or reconnecting: show a stale badge. */
  onLiveChange(live: boolean): void;
}

export interface SubscriptionOptions {
  fetchImpl?: typeof fetch;
  headers?: Record<string, string>;
  initialBackoffMs?: number;
  maxBackoffMs?: number;
  sleep?: (ms: number) => Promise<void>;
}

const defaultSleep = (ms: number) => new Promise<void>((r) => setTimeout(r, ms));

export class EventSubscription {
  private stopped = false;
  backoffMs: number;

  constructor(
    private url: string,
    private handlers: SubscriptionHandlers,
    private options: SubscriptionOptions = {},
  ) {
    this.backoffMs = options.initialBackoffMs ?? 1000;
  }

  stop(): void {
    this.stopped = true;
  }

  /** Runs until stop(); reconnects with exponential backoff on any drop. */
  async run(): Promise<void> {
    const fetchImpl = this.options.fetchImpl ?? fetch;
    const sleep = this.options.sleep ?? defaultSleep;
    const maxBackoff = this.options.maxBackoffMs ?? 30_000;
    const initialBackoff = this.options.initialBackoffMs ?? 1000;

    while (!this.stopped) {
      try {
        const response = await fetchImpl(this.url, {
          headers: this.options.headers ?? {},
        });
        if (!response.ok || !response.body) {
          throw new Error(`events endpoint returned ${response.status}`);
        }
        this.handlers.onLiveChange(true);
        this.backoffMs = initialBackoff;
        const reader = response.body.getReader();
        const decoder = new TextDecoder();
        const parser = new SSEParser();
        for (;;) {
          const { done, value } = await reader.read();
          if (done || this.stopped) break;
          for (const frame of parser.feed(decoder.decode(value, { stream: true }))) {
            this.handlers.onFrame(frame);
          }
        }
      } catch {
        /* fall through to reconnect */
      }
      if (this.stopped) return;
      this.handlers.onLiveChange(false);
      await sleep(this.backoffMs);
      this.backoffMs = Math.min(this.backoffMs * 2, maxBackoff);
    }
  }
}
