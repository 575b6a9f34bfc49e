import type {
  EditResponse,
  EditSource,
  ModelSummary,
  ScoreReport,
  SessionDocument,
  SessionState,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly code: number,
    message: string,
    readonly detail: unknown = null,
  ) {
    super(message);
  }
}

/** A stale expected_seq: someone else edited the session first. */
export class ConflictError extends ApiError {}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function fail(response: Response): Promise<never> {
  let message = `${response.status} ${response.statusText}`;
  let detail: unknown = null;
  try {
    const body = (await response.json()) as { message?: string; detail?: unknown };
    if (body && typeof body.message === "string") message = body.message;
    detail = body?.detail ?? null;
  } catch {
    // non-JSON error body; keep the status line
  }
  if (response.status === 409) throw new ConflictError(409, message, detail);
  throw new ApiError(response.status, message, detail);
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) await fail(response);
    return (await response.json()) as T;
  }

  listModels(): Promise<{ models: ModelSummary[] }> {
    return this.request("GET", "/v1/models");
  }

  createModel(body: {
    name: string;
    kind: string;
    text: string;
    orders?: number[];
    min_frequency?: number;
  }): Promise<ModelSummary> {
    return this.request("POST", "/v1/models", body);
  }

  score(text: string, modelId: string, mode: "paper" | "strict" = "paper"): Promise<ScoreReport> {
    return this.request("POST", "/v1/score", { text, model_id: modelId, mode });
  }

  createSession(text: string, modelId: string): Promise<SessionState> {
    return this.request("POST", "/v1/sessions", { text, model_id: modelId });
  }

  getSession(sessionId: string): Promise<SessionState> {
    return this.request("GET", `/v1/sessions/${sessionId}`);
  }

  applyEdit(
    sessionId: string,
    edit: { position: number; new_word: string; source: EditSource; expected_seq: number },
  ): Promise<EditResponse> {
    return this.request("POST", `/v1/sessions/${sessionId}/edits`, edit);
  }

  undo(sessionId: string, expectedSeq: number): Promise<EditResponse> {
    return this.request("POST", `/v1/sessions/${sessionId}/undo`, { expected_seq: expectedSeq });
  }

  exportSession(sessionId: string): Promise<SessionDocument> {
    return this.request("GET", `/v1/sessions/${sessionId}/export`);
  }
}
