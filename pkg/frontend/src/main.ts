import { ApiClient, ApiError } from "./api.js";
import { WorkbenchController } from "./state.js";
import {
  renderCandidatePanel,
  renderDocument,
  renderHistory,
  renderNotice,
  renderScore,
} from "./render.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

function defaultBaseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return fromQuery ?? localStorage.getItem("arianna.baseUrl") ?? "http://127.0.0.1:8000";
}

const baseUrlInput = el<HTMLInputElement>("base-url");
baseUrlInput.value = defaultBaseUrl();

let controller = new WorkbenchController(new ApiClient(baseUrlInput.value));

function redraw(): void {
  const state = controller.state;
  el("notice").innerHTML = renderNotice(state);
  el("document").innerHTML = renderDocument(state);
  el("candidates").innerHTML = renderCandidatePanel(state);
  el("score").innerHTML = state.session ? renderScore(state.session.report) : "";
  el("history").innerHTML = renderHistory(state);
  (el<HTMLButtonElement>("undo")).disabled = state.session === null || state.session.seq === 0;
  (el<HTMLButtonElement>("export")).disabled = state.session === null;
}

function showError(error: unknown): void {
  const message =
    error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
  controller.state.notice = message;
  redraw();
}

async function guarded(action: () => Promise<void>): Promise<void> {
  try {
    await action();
    redraw();
  } catch (error) {
    showError(error);
  }
}

async function refreshModels(): Promise<void> {
  const api = new ApiClient(baseUrlInput.value);
  const select = el<HTMLSelectElement>("model-select");
  const { models } = await api.listModels();
  select.innerHTML = models
    .map((m) => `<option value="${m.id}">${m.name} (${m.kind}, ${m.entries_total} entries)</option>`)
    .join("");
}

baseUrlInput.addEventListener("change", () => {
  localStorage.setItem("arianna.baseUrl", baseUrlInput.value);
  controller = new WorkbenchController(new ApiClient(baseUrlInput.value));
  void guarded(async () => {
    await refreshModels();
  });
});

el("connect").addEventListener("click", () => {
  void guarded(async () => {
    controller = new WorkbenchController(new ApiClient(baseUrlInput.value));
    await refreshModels();
  });
});

el("open-session").addEventListener("click", () => {
  void guarded(async () => {
    const text = el<HTMLTextAreaElement>("session-text").value;
    const modelId = el<HTMLSelectElement>("model-select").value;
    await controller.openSession(text, modelId);
  });
});

el("load-session").addEventListener("click", () => {
  void guarded(async () => {
    await controller.loadSession(el<HTMLInputElement>("session-id").value.trim());
  });
});

el("document").addEventListener("click", (event) => {
  const target = event.target as HTMLElement;
  if (!target.classList.contains("flagged")) return;
  controller.selectFlag(Number(target.dataset.position));
  redraw();
});

el("candidates").addEventListener("click", (event) => {
  const target = event.target as HTMLElement;
  if (!target.classList.contains("accept")) return;
  const position = Number(target.dataset.position);
  const word = target.dataset.word ?? "";
  void guarded(() => controller.acceptCandidate(position, word));
});

el("apply-manual").addEventListener("click", () => {
  void guarded(async () => {
    const position = Number(el<HTMLInputElement>("manual-position").value);
    const word = el<HTMLInputElement>("manual-word").value;
    await controller.manualEdit(position, word);
  });
});

el("undo").addEventListener("click", () => {
  void guarded(() => controller.undo());
});

el("export").addEventListener("click", () => {
  void guarded(async () => {
    const json = await controller.exportDocument();
    const blob = new Blob([json], { type: "application/json" });
    const url = URL.createObjectURL(blob);
    const link = document.createElement("a");
    link.href = url;
    link.download = `session-${controller.state.session?.id ?? "export"}.json`;
    link.click();
    URL.revokeObjectURL(url);
  });
});

void guarded(async () => {
  await refreshModels();
});
redraw();
