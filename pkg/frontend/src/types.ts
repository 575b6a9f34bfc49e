/** Payload shapes of the scoring service. The client never recomputes any of
 * these values; it only displays what the API returned. */

export interface Candidate {
  word: string;
  order: number;
  context: string;
  frequency: number;
  rank: number;
}

export interface Flag {
  position: number;
  actual: string;
  judge_context: string;
  candidates: Candidate[];
}

export interface ScoreReport {
  word_count: number;
  as_expected: number;
  unexpected: number;
  unevaluable?: number;
  consistency: number;
  mode: string;
  model_name: string;
  flags: Flag[];
}

export interface HistoryPoint {
  seq: number;
  consistency: number;
}

export interface SessionState {
  id: string;
  model_id: string;
  seq: number;
  tokens: string[];
  report: ScoreReport;
  history: HistoryPoint[];
}

export interface EditResponse {
  id: string;
  seq: number;
  report: ScoreReport;
  history_point: HistoryPoint;
}

export interface ModelSummary {
  id: string;
  name: string;
  kind: string;
  orders: number[];
  min_frequency: number;
  entry_counts: Record<string, number>;
  entries_total: number;
  checksum: string;
  token_count: number;
}

export type EditSource = "accepted-candidate" | "manual";

export interface SessionDocument {
  format_version: number;
  id: string;
  model: { name: string; checksum: string };
  original_text: string;
  edits: unknown[];
  score_history: unknown[];
}
