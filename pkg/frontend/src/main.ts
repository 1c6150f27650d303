/** Bootstrap: wire the store, push channel, and DOM together. */

import { HttpApi } from "./api.js";
import { renderDetail, renderQueue } from "./render.js";
import { EventSubscription } from "./sse.js";
import { ConsoleStore } from "./state.js";
import type { TriageForm } from "./viewmodel.js";

function param(name: string, fallback: string): string {
  return new URLSearchParams(location.search).get(name) ?? fallback;
}

async function boot(): Promise<void> {
  const baseUrl = param("server", "");
  const token = sessionStorage.getItem("api_token");
  const dispatcherId =
    sessionStorage.getItem("dispatcher_id") ??
    (() => {
      const id = prompt("Dispatcher id:") || "dispatcher";
      sessionStorage.setItem("dispatcher_id", id);
      return id;
    })();

  const api = new HttpApi(baseUrl, token);
  const store = new ConsoleStore(api, dispatcherId);

  const queueRoot = document.getElementById("queue-root")!;
  const detailRoot = document.getElementById("detail-root")!;
  const errorRoot = document.getElementById("error-root")!;
  const modeToggle = document.getElementById("mode-toggle") as HTMLSelectElement;
  const triageFormEl = document.getElementById("triage-form") as HTMLFormElement;

  modeToggle.addEventListener("change", () => {
    store.setProtocolMode(modeToggle.value as "ESI" | "START");
  });

  triageFormEl.addEventListener("submit", (event) => {
    event.preventDefault();
    const data = new FormData(triageFormEl);
    const form: TriageForm = {
      protocol: store.protocolMode,
      esiLevel: String(data.get("esi_level") ?? ""),
      startColor: String(data.get("start_color") ?? ""),
      dispatcherId,
      notes: String(data.get("notes") ?? ""),
    };
    void store.submitTriage(form);
  });

  store.subscribe(() => {
    queueRoot.replaceChildren(
      renderQueue(
        store.queueViewModel(),
        (id) => void store.openCall(id),
        (id) => void store.claimCall(id),
      ),
    );
    const detail = store.detailViewModel();
    detailRoot.replaceChildren();
    if (detail) detailRoot.appendChild(renderDetail(detail));
    const messages = [...store.triageErrors];
    if (store.lastError) messages.push(store.lastError);
    errorRoot.textContent = messages.join(" | ");
    triageFormEl.dataset.mode = store.protocolMode;
  });

  await store.init();

  const subscription = new EventSubscription(
    api.eventsUrl(),
    {
      onFrame: (frame) => void store.handleEvent(frame),
      onLiveChange: (live) => store.setLive(live),
    },
    { headers: token ? { "X-API-Token": token } : {} },
  );
  void subscription.run();
}

void boot();
