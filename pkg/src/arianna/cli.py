"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable input, bad
encoding, malformed model or session). A low consistency score is a result,
not a failure; ``--fail-below`` opts into gating with exit code 3.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .corpus_io import CorpusSource, read_corpus
from .errors import AriannaError
from .model import (
    DEFAULT_MIN_FREQUENCY,
    build_model,
    load_model,
    save_model,
)
from .scorer import ScoreReport, report_to_dict, score, score_strict
from .session import import_session

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_THRESHOLD = 3

DEFAULT_MODEL_DIR = "arianna-data"
MODEL_DIR_ENV = "ARIANNA_MODEL_DIR"


class _Parser(argparse.ArgumentParser):
    """argparse, but usage errors exit 1 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _orders_arg(value: str) -> frozenset[int]:
    try:
        orders = frozenset(int(part) for part in value.split(",") if part)
    except ValueError:
        raise argparse.ArgumentTypeError(f"orders must be a comma list of integers, got {value!r}")
    if not orders or not orders <= {3, 4, 5}:
        raise argparse.ArgumentTypeError("orders must be a non-empty subset of 3,4,5")
    return orders


def _min_frequency_arg(value: str) -> int:
    try:
        threshold = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"min-frequency must be an integer, got {value!r}")
    if threshold < 1:
        raise argparse.ArgumentTypeError("min-frequency must be >= 1")
    return threshold


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arianna", description="N-gram consistency scoring for text corpora.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="train a consistency model from text files")
    p_build.add_argument("--in", dest="inputs", nargs="+", required=True, metavar="PATH",
                         help="input text files or directories")
    p_build.add_argument("--out", required=True, help="model file to write")
    p_build.add_argument("--kind", choices=("internal", "external"), default="internal")
    p_build.add_argument("--name", help="model name (default: output file stem)")
    p_build.add_argument("--orders", type=_orders_arg, default=frozenset({3, 4, 5}),
                         metavar="3,4,5", help="n-gram orders to include (default 3,4,5)")
    p_build.add_argument("--min-frequency", type=_min_frequency_arg,
                         default=DEFAULT_MIN_FREQUENCY, metavar="N",
                         help="keep n-grams occurring at least N times (default 2)")
    p_build.add_argument("--ext", default=".txt", help="extension for directory inputs (default .txt)")

    def add_text_args(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--text", help="text to evaluate, inline")
        group.add_argument("--text-file", help="text to evaluate, from a file")

    p_score = sub.add_parser("score", help="score a text against a model")
    p_score.add_argument("--model", required=True, help="model file")
    add_text_args(p_score)
    p_score.add_argument("--mode", choices=("paper", "strict"), default="paper",
                         help="'strict' reports unevaluable positions separately")
    p_score.add_argument("--format", choices=("human", "report"), default="human",
                         help="'report' emits the structured JSON report")
    p_score.add_argument("--fail-below", type=float, metavar="X",
                         help="exit 3 when consistency < X")

    p_suggest = sub.add_parser("suggest", help="list replacement candidates for flagged words")
    p_suggest.add_argument("--model", required=True, help="model file")
    add_text_args(p_suggest)

    p_replay = sub.add_parser("replay", help="verify an exported session document")
    p_replay.add_argument("--session", required=True, help="session document (JSON)")
    p_replay.add_argument("--model", required=True, help="model file the session was recorded against")

    p_report = sub.add_parser("report", help="render a session report: TSV tables plus a score chart")
    p_report.add_argument("--session", required=True, help="session document (JSON)")
    p_report.add_argument("--model", required=True, help="model file the session was recorded against")
    p_report.add_argument("--out-dir", required=True, help="directory for the rendered files")

    p_serve = sub.add_parser("serve", help="run the HTTP API")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")

    return parser


def _load_eval_text(args) -> str:
    if args.text is not None:
        return args.text
    return read_corpus(CorpusSource.from_paths([args.text_file]))


def _print_human_report(report: ScoreReport) -> None:
    print(f"consistency: {report.consistency!r}")
    counts = f"words: {report.word_count}  as expected: {report.as_expected}  unexpected: {report.unexpected}"
    if report.unevaluable is not None:
        counts += f"  unevaluable: {report.unevaluable}"
    print(counts)
    print(f"model: {report.model_name}")
    for flag in report.flags:
        words = ", ".join(c.word for c in flag.candidates) or "(no candidates)"
        print(f"flag [{flag.position}] {flag.actual} -> {words} (context {flag.judge_context})")


def cmd_build(args) -> int:
    source = CorpusSource.from_paths(args.inputs, extension=args.ext)
    text = read_corpus(source)
    name = args.name if args.name else Path(args.out).stem.replace(" ", "-") or "model"
    model = build_model(
        text,
        orders=args.orders,
        min_frequency=args.min_frequency,
        kind=args.kind,
        name=name,
    )
    save_model(model, args.out)
    per_order = ", ".join(f"order {o}: {n}" for o, n in model.entry_counts.items())
    print(f"wrote {args.out}: {len(model)} entries ({per_order})")
    return EXIT_OK


def cmd_score(args) -> int:
    model = load_model(args.model)
    text = _load_eval_text(args)
    report = score_strict(text, model) if args.mode == "strict" else score(text, model)
    if args.format == "report":
        print(json.dumps(report_to_dict(report), indent=2))
    else:
        _print_human_report(report)
    if args.fail_below is not None and report.consistency < args.fail_below:
        return EXIT_THRESHOLD
    return EXIT_OK


def cmd_suggest(args) -> int:
    model = load_model(args.model)
    report = score(_load_eval_text(args), model)
    if not report.flags:
        print("no flags")
        return EXIT_OK
    print("context\tactual\tcandidate\torder")
    for flag in report.flags:
        for c in flag.candidates:
            print(f"{c.context}\t{flag.actual}\t{c.word}\t{c.order}")
        if not flag.candidates:
            print(f"{flag.judge_context}\t{flag.actual}\t\t")
    return EXIT_OK


def _load_session(args):
    model = load_model(args.model)
    raw = Path(args.session).read_text(encoding="utf-8")
    doc = json.loads(raw)
    return import_session(doc, model)


def cmd_replay(args) -> int:
    session = _load_session(args)
    print(
        f"session {session.id}: replayed {len(session.edit_log)} edits, "
        f"verified {len(session.score_history)} score points"
    )
    print(f"final consistency: {session.latest_report.consistency!r}")
    return EXIT_OK


def cmd_report(args) -> int:
    from .report import render_session_report

    session = _load_session(args)
    for path in render_session_report(session, args.out_dir):
        print(f"wrote {path}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    model_dir = os.environ.get(MODEL_DIR_ENV, DEFAULT_MODEL_DIR)
    app = create_app(model_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


_COMMANDS = {
    "build": cmd_build,
    "score": cmd_score,
    "suggest": cmd_suggest,
    "replay": cmd_replay,
    "report": cmd_report,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (AriannaError, OSError, json.JSONDecodeError) as exc:
        print(f"arianna: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
