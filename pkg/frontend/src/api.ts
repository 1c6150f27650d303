/** Typed client over the service API. Every console number comes from here;
 * the console itself never computes scores or reorders the queue. */

import type {
  CallRecord,
  QueueResponse,
  ServerConfig,
  TriageRequest,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public errorCode: string,
    detail: string,
  ) {
    super(detail);
  }
}

export interface Api {
  getConfig(): Promise<ServerConfig>;
  getQueue(): Promise<QueueResponse>;
  getCall(id: string): Promise<CallRecord>;
  claim(id: string, dispatcherId: string): Promise<CallRecord>;
  submitTriage(id: string, request: TriageRequest): Promise<CallRecord>;
  audioUrl(id: string): string;
  eventsUrl(): string;
}

export class HttpApi implements Api {
  constructor(
    private baseUrl: string,
    private apiToken: string | null = null,
    private fetchImpl: typeof fetch = fetch,
  ) {}

  private headers(json = false): Record<string, string> {
    const h: Record<string, string> = {};
    if (json) h["Content-Type"] = "application/json";
    if (this.apiToken) h["X-API-Token"] = this.apiToken;
    return h;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let code = "error";
      let detail = `${response.status}`;
      try {
        const body = (await response.json()) as { error?: string; detail?: string };
        code = body.error ?? code;
        detail = body.detail ?? detail;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(response.status, code, detail);
    }
    return (await response.json()) as T;
  }

  getConfig(): Promise<ServerConfig> {
    return this.request("/config", { headers: this.headers() });
  }

  getQueue(): Promise<QueueResponse> {
    return this.request("/queue", { headers: this.headers() });
  }

  getCall(id: string): Promise<CallRecord> {
    return this.request(`/calls/${id}`, { headers: this.headers() });
  }

  claim(id: string, dispatcherId: string): Promise<CallRecord> {
    return this.request(`/calls/${id}/claim`, {
      method: "POST",
      headers: this.headers(true),
      body: JSON.stringify({ dispatcher_id: dispatcherId }),
    });
  }

  submitTriage(id: string, request: TriageRequest): Promise<CallRecord> {
    return this.request(`/calls/${id}/triage`, {
      method: "POST",
      headers: this.headers(true),
      body: JSON.stringify(request),
    });
  }

  audioUrl(id: string): string {
    return `${this.baseUrl}/calls/${id}/audio`;
  }

  eventsUrl(): string {
    return `${this.baseUrl}/events`;
  }
}
