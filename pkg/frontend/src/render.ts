import { historyChartSvg } from "./chart.js";
import { selectedFlag, type WorkbenchState } from "./state.js";
import type { Flag, ScoreReport } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

/** The document as word spans; flagged positions are marked and clickable. */
export function renderDocument(state: WorkbenchState): string {
  const session = state.session;
  if (session === null) return `<p class="empty">No session open.</p>`;
  const flagged = new Map(session.report.flags.map((f) => [f.position, f]));
  const words = session.tokens.map((token, position) => {
    const classes = ["word"];
    if (flagged.has(position)) classes.push("flagged");
    if (position === state.selectedPosition) classes.push("selected");
    return `<span class="${classes.join(" ")}" data-position="${position}">${escapeHtml(token)}</span>`;
  });
  return `<p class="document">${words.join(" ")}</p>`;
}

export function renderScore(report: ScoreReport): string {
  const extra =
    report.unevaluable === undefined ? "" : `  unevaluable: ${report.unevaluable}`;
  return (
    `<div class="score"><span class="value">${report.consistency}</span>` +
    `<span class="counts">words: ${report.word_count}  as expected: ${report.as_expected}` +
    `  unexpected: ${report.unexpected}${extra}</span>` +
    `<span class="model">model: ${escapeHtml(report.model_name)}</span></div>`
  );
}

/** Candidate list for one flag, in the exact rank order the API returned. */
export function renderCandidates(flag: Flag): string {
  if (flag.candidates.length === 0) {
    return `<p class="empty">No replacement candidates for “${escapeHtml(flag.actual)}”.</p>`;
  }
  const rows = flag.candidates
    .map(
      (c) =>
        `<li><button class="accept" data-position="${flag.position}" data-word="${escapeHtml(c.word)}">` +
        `${escapeHtml(c.word)}</button>` +
        `<span class="evidence">order ${c.order}, context ${escapeHtml(c.context)}, seen ${c.frequency}×</span></li>`,
    )
    .join("");
  return (
    `<p class="prompt">Replace “${escapeHtml(flag.actual)}” (context ${escapeHtml(flag.judge_context)}):</p>` +
    `<ol class="candidates">${rows}</ol>`
  );
}

export function renderCandidatePanel(state: WorkbenchState): string {
  const flag = selectedFlag(state);
  if (state.session === null) return "";
  if (flag === null) {
    const count = state.session.report.flags.length;
    return count === 0
      ? `<p class="empty">No flagged words.</p>`
      : `<p class="empty">Select a highlighted word to see its candidates (${count} flagged).</p>`;
  }
  return renderCandidates(flag);
}

export function renderHistory(state: WorkbenchState): string {
  const session = state.session;
  if (session === null) return "";
  const items = session.history
    .map((p) => `<li>seq ${p.seq}: ${p.consistency}</li>`)
    .join("");
  return `${historyChartSvg(session.history)}<ul class="history-list">${items}</ul>`;
}

export function renderNotice(state: WorkbenchState): string {
  if (state.notice === null) return "";
  return `<div class="notice">${escapeHtml(state.notice)}</div>`;
}
