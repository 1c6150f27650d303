/** Wire types mirroring the calltriage HTTP API. */

export type QueueLevel =
  | "Q1_IMMEDIATE"
  | "Q2_ELEVATED"
  | "Q3_MONITOR"
  | "Q5_ROUTINE"
  | "Q5_REVIEW";

export type CallStatus = "PROCESSING" | "QUEUED" | "CLAIMED" | "TRIAGED" | "CLOSED";

export interface QueueEntry {
  call_id: string;
  level: QueueLevel;
  matrix_cell: [boolean, boolean, boolean];
  early_exit: boolean;
  reason_codes: string[];
  absent_flags: string[];
  assigned_at: string;
  wait_seconds: number;
  sla_hint: string | null;
  protocol_guidance: string;
}

export interface QueueResponse {
  entries: QueueEntry[];
}

export interface Transcript {
  text: string;
  token_logprobs: number[];
  confidence: number;
  language_tag: string;
  backend_id: string;
  latency: number;
}

export interface Entities {
  location: string[];
  mechanism: string[];
  clinical_indicators: string[];
  scale_notes: string[];
  uncertainty_marked: boolean;
  phonetic_alternatives: string[];
}

export interface ContentScore {
  hazard_points: number;
  threat_points: number;
  vulnerability_points: number;
  scale_points: number;
  score: number;
  high_content: boolean;
}

export interface Distress {
  pitch_elevation: number;
  pitch_instability: number;
  energy: number;
  perturbation: number;
  score: number;
  high_distress: boolean;
}

export interface Assignment {
  level: QueueLevel;
  matrix_cell: [boolean, boolean, boolean];
  early_exit: boolean;
  reason_codes: string[];
  assigned_at: string;
}

export interface TriageDecision {
  protocol: "ESI" | "START";
  esi_level: number | null;
  start_color: "RED" | "YELLOW" | "GREEN" | "BLACK" | null;
  dispatcher_id: string;
  decided_at: string;
  notes: string;
}

export interface CallRecord {
  call_id: string;
  received_at: string;
  audio_ref: string;
  source_id: string;
  status: CallStatus;
  transcript: Transcript | null;
  transcript_error: string | null;
  classification: Record<string, unknown> | null;
  entities: Entities | null;
  content_score: ContentScore | null;
  content_error: string | null;
  distress: Distress | null;
  distress_error: string | null;
  assignment: Assignment | null;
  claimed_by: string | null;
  triage: TriageDecision | null;
}

export interface ServerConfig {
  thresholds: {
    confidence_high: number;
    confidence_min: number;
    content_high: number;
    distress_high: number;
    early_exit_distress: number;
    early_exit_extreme: number;
  };
  sla_hints: Record<string, string | null>;
  backend_mode: string;
}

export interface EventFrame {
  event_type: "enqueue" | "claim" | "triage" | "close";
  call_id: string;
  level: string | null;
  timestamp: string;
}

export interface TriageRequest {
  protocol: "ESI" | "START";
  esi_level?: number;
  start_color?: string;
  dispatcher_id: string;
  notes: string;
}
