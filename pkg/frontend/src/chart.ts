import type { HistoryPoint } from "./types.js";

const WIDTH = 560;
const HEIGHT = 180;
const PAD = { left: 42, right: 14, top: 12, bottom: 26 };

function x(seq: number, maxSeq: number): number {
  const span = WIDTH - PAD.left - PAD.right;
  return PAD.left + (maxSeq === 0 ? 0 : (seq / maxSeq) * span);
}

function y(consistency: number): number {
  const span = HEIGHT - PAD.top - PAD.bottom;
  return PAD.top + (1 - consistency) * span;
}

/** Inline SVG of consistency over edit seq; no client-side math beyond layout. */
export function historyChartSvg(history: HistoryPoint[]): string {
  const maxSeq = history.length > 0 ? history[history.length - 1]!.seq : 0;
  const gridLines = [0, 0.25, 0.5, 0.75, 1]
    .map((v) => {
      const gy = y(v).toFixed(1);
      return (
        `<line x1="${PAD.left}" y1="${gy}" x2="${WIDTH - PAD.right}" y2="${gy}" class="grid"/>` +
        `<text x="${PAD.left - 6}" y="${gy}" class="tick" text-anchor="end" dominant-baseline="middle">${v}</text>`
      );
    })
    .join("");
  const points = history
    .map((p) => `${x(p.seq, maxSeq).toFixed(1)},${y(p.consistency).toFixed(1)}`)
    .join(" ");
  const markers = history
    .map(
      (p) =>
        `<circle cx="${x(p.seq, maxSeq).toFixed(1)}" cy="${y(p.consistency).toFixed(1)}" r="3.5">` +
        `<title>seq ${p.seq}: ${p.consistency}</title></circle>`,
    )
    .join("");
  const labels = history
    .map(
      (p) =>
        `<text x="${x(p.seq, maxSeq).toFixed(1)}" y="${HEIGHT - 8}" class="tick" text-anchor="middle">${p.seq}</text>`,
    )
    .join("");
  const line =
    history.length > 1 ? `<polyline points="${points}" fill="none" class="line"/>` : "";
  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img" aria-label="consistency history">` +
    gridLines +
    line +
    `<g class="marker">${markers}</g>` +
    labels +
    `</svg>`
  );
}
