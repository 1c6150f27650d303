/** Pure mappings from server payloads to render models.
 *
 * Invariants: queue rendering preserves server order exactly (no client-side
 * sorting), and every displayed value is copied from a server field. The
 * low-confidence banner threshold comes from the server config fetched at
 * startup, never a constant baked in here.
 */

import type { CallRecord, QueueEntry, QueueLevel } from "./types.js";

export interface QueueRowViewModel {
  callId: string;
  level: QueueLevel;
  badgeClass: string;
  earlyExit: boolean;
  reasons: string[];
  absentFlags: string[];
  waitLabel: string;
  slaHint: string | null;
  guidance: string;
}

export interface QueueViewModel {
  rows: QueueRowViewModel[];
  live: boolean;
}

const BADGE_CLASSES: Record<QueueLevel, string> = {
  Q1_IMMEDIATE: "badge-q1",
  Q2_ELEVATED: "badge-q2",
  Q3_MONITOR: "badge-q3",
  Q5_ROUTINE: "badge-q5",
  Q5_REVIEW: "badge-q5 badge-review",
};

export function formatWait(totalSeconds: number): string {
  const seconds = Math.max(0, Math.floor(totalSeconds));
  if (seconds < 60) return `${seconds}s`;
  const minutes = Math.floor(seconds / 60);
  return `${minutes}m ${seconds % 60}s`;
}

/** Server order in, same order out. */
export function buildQueueViewModel(
  entries: QueueEntry[],
  live: boolean,
): QueueViewModel {
  return {
    live,
    rows: entries.map((entry) => ({
      callId: entry.call_id,
      level: entry.level,
      badgeClass: BADGE_CLASSES[entry.level],
      earlyExit: entry.early_exit,
      reasons: entry.reason_codes,
      absentFlags: entry.absent_flags,
      waitLabel: formatWait(entry.wait_seconds),
      slaHint: entry.sla_hint,
      guidance: entry.protocol_guidance,
    })),
  };
}

export interface GaugeViewModel {
  label: string;
  value: number; // [0, 1], straight from the server
}

export interface CallDetailViewModel {
  callId: string;
  status: string;
  level: QueueLevel | null;
  reasons: string[];
  transcriptText: string | null;
  transcriptError: string | null;
  confidence: number | null;
  confidenceLabel: string;
  /** Shown when confidence is below the server's high-confidence bar. */
  audioReviewBanner: boolean;
  entityPanels: { title: string; items: string[] }[];
  uncertaintyMarked: boolean;
  phoneticAlternatives: string[];
  contentScore: number | null;
  distressGauges: GaugeViewModel[];
  distressScore: number | null;
  highDistress: boolean;
  audioUrl: string;
  claimedBy: string | null;
  triageSummary: string | null;
}

export function buildCallDetailViewModel(
  record: CallRecord,
  confidenceHighThreshold: number,
  audioUrl: string,
): CallDetailViewModel {
  const confidence = record.transcript?.confidence ?? null;
  const entities = record.entities;
  const distress = record.distress;
  return {
    callId: record.call_id,
    status: record.status,
    level: record.assignment?.level ?? null,
    reasons: record.assignment?.reason_codes ?? [],
    transcriptText: record.transcript?.text ?? null,
    transcriptError: record.transcript_error,
    confidence,
    confidenceLabel:
      confidence === null ? "unavailable" : `${(confidence * 100).toFixed(0)}%`,
    audioReviewBanner: (confidence ?? 0) < confidenceHighThreshold,
    entityPanels: [
      { title: "Location", items: entities?.location ?? [] },
      { title: "Mechanism", items: entities?.mechanism ?? [] },
      { title: "Clinical", items: entities?.clinical_indicators ?? [] },
      { title: "Scale", items: entities?.scale_notes ?? [] },
    ],
    uncertaintyMarked: entities?.uncertainty_marked ?? false,
    phoneticAlternatives: entities?.phonetic_alternatives ?? [],
    contentScore: record.content_score?.score ?? null,
    distressGauges: distress
      ? [
          { label: "Pitch elevation", value: distress.pitch_elevation },
          { label: "Pitch instability", value: distress.pitch_instability },
          { label: "Energy", value: distress.energy },
          { label: "Perturbation", value: distress.perturbation },
        ]
      : [],
    distressScore: distress?.score ?? null,
    highDistress: distress?.high_distress ?? false,
    audioUrl,
    claimedBy: record.claimed_by,
    triageSummary: record.triage
      ? record.triage.protocol === "ESI"
        ? `ESI level ${record.triage.esi_level}`
        : `START ${record.triage.start_color}`
      : null,
  };
}

export interface TriageForm {
  protocol: "ESI" | "START";
  esiLevel: string; // raw input value
  startColor: string;
  dispatcherId: string;
  notes: string;
}

export interface TriageValidation {
  ok: boolean;
  errors: string[];
  esiLevel?: number;
  startColor?: "RED" | "YELLOW" | "GREEN" | "BLACK";
}

const START_COLORS = ["RED", "YELLOW", "GREEN", "BLACK"] as const;

/** Client-side bounds: invalid forms produce inline errors and no request. */
export function validateTriage(form: TriageForm): TriageValidation {
  const errors: string[] = [];
  if (!form.dispatcherId.trim()) {
    errors.push("dispatcher id is required");
  }
  let esiLevel: number | undefined;
  let startColor: TriageValidation["startColor"];
  if (form.protocol === "ESI") {
    const parsed = Number(form.esiLevel);
    if (!Number.isInteger(parsed) || parsed < 1 || parsed > 5) {
      errors.push("ESI level must be an integer from 1 to 5");
    } else {
      esiLevel = parsed;
    }
  } else {
    if (!START_COLORS.includes(form.startColor as (typeof START_COLORS)[number])) {
      errors.push("START color must be RED, YELLOW, GREEN, or BLACK");
    } else {
      startColor = form.startColor as TriageValidation["startColor"];
    }
  }
  return { ok: errors.length === 0, errors, esiLevel, startColor };
}
