"""Render a session into files: delimited tables plus a score-history figure.

Output layout under the target directory:

    history.tsv      one row per history point (seq, consistency, counts)
    flags.tsv        one row per candidate of each currently flagged word
    consistency.png  consistency score versus edit sequence
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .scorer import ScoreReport
from .session import CleaningSession

HISTORY_COLUMNS = ("seq", "consistency", "word_count", "as_expected", "unexpected")
FLAG_COLUMNS = ("position", "actual", "context", "candidate", "order", "frequency", "rank")


def write_history_tsv(session: CleaningSession, path: Path) -> None:
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(HISTORY_COLUMNS)
        for seq, report in session.score_history:
            writer.writerow(
                [seq, report.consistency, report.word_count, report.as_expected, report.unexpected]
            )


def write_flags_tsv(report: ScoreReport, path: Path) -> None:
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(FLAG_COLUMNS)
        for flag in report.flags:
            if not flag.candidates:
                writer.writerow([flag.position, flag.actual, flag.judge_context, "", "", "", ""])
            for c in flag.candidates:
                writer.writerow(
                    [flag.position, flag.actual, c.context, c.word, c.order, c.frequency, c.rank]
                )


def plot_history(session: CleaningSession, path: Path) -> None:
    """Line chart of consistency against edit seq, clamped to [0, 1]."""
    seqs = [seq for seq, _ in session.score_history]
    values = [report.consistency for _, report in session.score_history]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot(seqs, values, marker="o", color="#2b6cb0")
    ax.set_xlabel("edit seq")
    ax.set_ylabel("consistency")
    ax.set_ylim(-0.02, 1.02)
    ax.set_xticks(seqs)
    ax.set_title(f"consistency over edits ({session.model.name})")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_session_report(session: CleaningSession, out_dir: str | Path) -> list[Path]:
    """Write all report files for ``session``; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    history = out / "history.tsv"
    flags = out / "flags.tsv"
    figure = out / "consistency.png"
    write_history_tsv(session, history)
    write_flags_tsv(session.latest_report, flags)
    plot_history(session, figure)
    return [history, flags, figure]
