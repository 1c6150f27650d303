/** Console store: queue + detail state, push-driven refresh, optimistic ops.
 *
 * Claims apply optimistically (the row disappears at click time) and
 * reconcile against the server answer; a lost race restores the view and
 * surfaces the winning dispatcher from the conflict detail.
 */

import { ApiError, type Api } from "./api.js";
import type { CallRecord, EventFrame, QueueEntry, ServerConfig } from "./types.js";
import {
  buildCallDetailViewModel,
  buildQueueViewModel,
  validateTriage,
  type CallDetailViewModel,
  type QueueViewModel,
  type TriageForm,
} from "./viewmodel.js";

export type Listener = () => void;

export class ConsoleStore {
  entries: QueueEntry[] = [];
  detail: CallRecord | null = null;
  config: ServerConfig | null = null;
  live = false;
  lastError: string | null = null;
  triageErrors: string[] = [];
  protocolMode: "ESI" | "START" = "ESI";

  private listeners: Listener[] = [];

  constructor(
    private api: Api,
    public dispatcherId: string,
  ) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  async init(): Promise<void> {
    this.config = await this.api.getConfig();
    await this.refreshQueue();
  }

  async refreshQueue(): Promise<void> {
    const response = await this.api.getQueue();
    this.entries = response.entries; // server order, verbatim
    this.notify();
  }

  async openCall(callId: string): Promise<void> {
    this.detail = await this.api.getCall(callId);
    this.triageErrors = [];
    this.notify();
  }

  setLive(live: boolean): void {
    this.live = live;
    this.notify();
  }

  setProtocolMode(mode: "ESI" | "START"): void {
    this.protocolMode = mode;
    this.notify();
  }

  /** Apply one push frame: the queue view tracks the server within one event. */
  async handleEvent(frame: EventFrame): Promise<void> {
    await this.refreshQueue();
    if (
      this.detail &&
      frame.call_id === this.detail.call_id &&
      frame.event_type !== "enqueue"
    ) {
      this.detail = await this.api.getCall(frame.call_id);
    }
    this.notify();
  }

  async claimCall(callId: string): Promise<boolean> {
    const snapshot = this.entries;
    // optimistic: drop the row immediately
    this.entries = this.entries.filter((e) => e.call_id !== callId);
    this.lastError = null;
    this.notify();
    try {
      this.detail = await this.api.claim(callId, this.dispatcherId);
      this.notify();
      return true;
    } catch (error) {
      this.entries = snapshot;
      if (error instanceof ApiError && error.status === 409) {
        try {
          const current = await this.api.getCall(callId);
          this.lastError = current.claimed_by
            ? `call already claimed by ${current.claimed_by}`
            : "call is no longer claimable";
        } catch {
          this.lastError = "call is no longer claimable";
        }
        await this.refreshQueue();
      } else {
        this.lastError = error instanceof Error ? error.message : String(error);
      }
      this.notify();
      return false;
    }
  }

  async submitTriage(form: TriageForm): Promise<boolean> {
    if (!this.detail) return false;
    const validation = validateTriage(form);
    this.triageErrors = validation.errors;
    if (!validation.ok) {
      this.notify();
      return false; // inline errors; no request leaves the console
    }
    const callId = this.detail.call_id;
    try {
      this.detail = await this.api.submitTriage(callId, {
        protocol: form.protocol,
        esi_level: validation.esiLevel,
        start_color: validation.startColor,
        dispatcher_id: form.dispatcherId,
        notes: form.notes,
      });
      await this.refreshQueue();
      this.notify();
      return true;
    } catch (error) {
      this.lastError = error instanceof Error ? error.message : String(error);
      this.notify();
      return false;
    }
  }

  queueViewModel(): QueueViewModel {
    return buildQueueViewModel(this.entries, this.live);
  }

  detailViewModel(): CallDetailViewModel | null {
    if (!this.detail || !this.config) return null;
    return buildCallDetailViewModel(
      this.detail,
      this.config.thresholds.confidence_high,
      this.api.audioUrl(this.detail.call_id),
    );
  }
}
