import { ApiClient, ConflictError } from "./api.js";
import type { EditSource, Flag, SessionState } from "./types.js";

/** What the view needs to draw one frame. */
export interface WorkbenchState {
  session: SessionState | null;
  selectedPosition: number | null;
  notice: string | null;
  busy: boolean;
}

export function initialState(): WorkbenchState {
  return { session: null, selectedPosition: null, notice: null, busy: false };
}

export function selectedFlag(state: WorkbenchState): Flag | null {
  if (state.session === null || state.selectedPosition === null) return null;
  return (
    state.session.report.flags.find((f) => f.position === state.selectedPosition) ?? null
  );
}

/** Drives one session against the API and mutates a WorkbenchState.
 *
 * Every mutation goes through the service; after a write the full session
 * state is re-fetched so the display always equals the server's last word.
 * A 409 is surfaced as a notice and the state refreshed, never retried.
 */
export class WorkbenchController {
  readonly state: WorkbenchState = initialState();

  constructor(private readonly api: ApiClient) {}

  async openSession(text: string, modelId: string): Promise<void> {
    this.state.busy = true;
    try {
      this.state.session = await this.api.createSession(text, modelId);
      this.state.selectedPosition = null;
      this.state.notice = null;
    } finally {
      this.state.busy = false;
    }
  }

  async loadSession(sessionId: string): Promise<void> {
    this.state.busy = true;
    try {
      this.state.session = await this.api.getSession(sessionId);
      this.state.selectedPosition = null;
      this.state.notice = null;
    } finally {
      this.state.busy = false;
    }
  }

  selectFlag(position: number | null): void {
    this.state.selectedPosition = position;
  }

  private async refresh(): Promise<void> {
    if (this.state.session === null) return;
    this.state.session = await this.api.getSession(this.state.session.id);
    if (
      this.state.selectedPosition !== null &&
      !this.state.session.report.flags.some((f) => f.position === this.state.selectedPosition)
    ) {
      this.state.selectedPosition = null;
    }
  }

  private async write(action: () => Promise<unknown>): Promise<void> {
    if (this.state.session === null) throw new Error("no session open");
    this.state.busy = true;
    try {
      await action();
      this.state.notice = null;
      await this.refresh();
    } catch (error) {
      if (error instanceof ConflictError) {
        this.state.notice =
          "Someone else changed this session first; the view has been refreshed. " +
          "Re-apply your edit if it still makes sense.";
        await this.refresh();
      } else {
        throw error;
      }
    } finally {
      this.state.busy = false;
    }
  }

  async acceptCandidate(position: number, word: string): Promise<void> {
    await this.write(() =>
      this.api.applyEdit(this.state.session!.id, {
        position,
        new_word: word,
        source: "accepted-candidate",
        expected_seq: this.state.session!.seq,
      }),
    );
  }

  async manualEdit(position: number, word: string, source: EditSource = "manual"): Promise<void> {
    await this.write(() =>
      this.api.applyEdit(this.state.session!.id, {
        position,
        new_word: word,
        source,
        expected_seq: this.state.session!.seq,
      }),
    );
  }

  async undo(): Promise<void> {
    await this.write(() => this.api.undo(this.state.session!.id, this.state.session!.seq));
  }

  async exportDocument(): Promise<string> {
    if (this.state.session === null) throw new Error("no session open");
    const doc = await this.api.exportSession(this.state.session.id);
    return JSON.stringify(doc, null, 2);
  }
}
