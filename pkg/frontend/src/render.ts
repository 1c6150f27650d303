/** Thin DOM layer: view models in, elements out. No business logic here. */

import type { CallDetailViewModel, QueueViewModel } from "./viewmodel.js";

function el(tag: string, className?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderQueue(
  vm: QueueViewModel,
  onOpen: (callId: string) => void,
  onClaim: (callId: string) => void,
): HTMLElement {
  const root = el("div", "queue");
  if (!vm.live) {
    root.appendChild(
      el("div", "stale-banner", "Connection lost - queue may be stale"),
    );
  }
  const list = el("ul", "queue-list");
  for (const row of vm.rows) {
    const item = el("li", `queue-row ${row.badgeClass}`);
    item.dataset.callId = row.callId;
    item.appendChild(el("span", "badge", row.level.replace("_", "-")));
    if (row.earlyExit) item.appendChild(el("span", "early-exit", "early exit"));
    item.appendChild(el("span", "wait", row.waitLabel));
    if (row.slaHint) item.appendChild(el("span", "sla", row.slaHint));
    item.appendChild(el("span", "reasons", row.reasons.join("; ")));
    for (const flag of row.absentFlags) {
      item.appendChild(el("span", "absent-flag", flag));
    }
    const open = el("button", "open", "Open") as HTMLButtonElement;
    open.addEventListener("click", () => onOpen(row.callId));
    const claim = el("button", "claim", "Claim") as HTMLButtonElement;
    claim.addEventListener("click", () => onClaim(row.callId));
    item.append(open, claim);
    list.appendChild(item);
  }
  root.appendChild(list);
  return root;
}

export function renderDetail(vm: CallDetailViewModel): HTMLElement {
  const root = el("div", "detail");
  root.appendChild(el("h2", "call-id", vm.callId));
  root.appendChild(el("div", "status", `${vm.status}${vm.level ? ` - ${vm.level}` : ""}`));

  if (vm.audioReviewBanner) {
    root.appendChild(
      el(
        "div",
        "audio-review-banner",
        "Low transcription confidence - listen to the audio directly",
      ),
    );
  }

  const transcript = el("section", "transcript");
  transcript.appendChild(el("h3", undefined, "Transcript"));
  transcript.appendChild(
    el("p", "text", vm.transcriptText ?? vm.transcriptError ?? "unavailable"),
  );
  transcript.appendChild(el("p", "confidence", `confidence: ${vm.confidenceLabel}`));
  root.appendChild(transcript);

  const audio = document.createElement("audio");
  audio.controls = true;
  audio.src = vm.audioUrl;
  root.appendChild(audio);

  const entities = el("section", "entities");
  for (const panel of vm.entityPanels) {
    const box = el("div", "entity-panel");
    box.appendChild(el("h4", undefined, panel.title));
    const ul = el("ul");
    for (const item of panel.items) ul.appendChild(el("li", undefined, item));
    if (panel.items.length === 0) ul.appendChild(el("li", "empty", "-"));
    box.appendChild(ul);
    entities.appendChild(box);
  }
  if (vm.uncertaintyMarked) {
    entities.appendChild(el("div", "uncertain", "extractions marked uncertain"));
  }
  if (vm.phoneticAlternatives.length) {
    entities.appendChild(
      el("div", "phonetic", `alternatives: ${vm.phoneticAlternatives.join(", ")}`),
    );
  }
  root.appendChild(entities);

  const distress = el("section", "distress");
  distress.appendChild(
    el(
      "h3",
      undefined,
      vm.distressScore === null
        ? "Distress: unavailable"
        : `Distress ${vm.distressScore.toFixed(2)}${vm.highDistress ? " (HIGH)" : ""}`,
    ),
  );
  for (const gauge of vm.distressGauges) {
    const row = el("div", "gauge");
    row.appendChild(el("span", "gauge-label", gauge.label));
    const bar = el("div", "gauge-bar");
    const fill = el("div", "gauge-fill");
    fill.style.width = `${Math.round(gauge.value * 100)}%`;
    bar.appendChild(fill);
    row.appendChild(bar);
    row.appendChild(el("span", "gauge-value", gauge.value.toFixed(2)));
    distress.appendChild(row);
  }
  if (vm.contentScore !== null) {
    distress.appendChild(el("div", "content-score", `content score: ${vm.contentScore}`));
  }
  root.appendChild(distress);

  if (vm.triageSummary) {
    root.appendChild(el("div", "triage-done", `Triaged: ${vm.triageSummary}`));
  }
  return root;
}
