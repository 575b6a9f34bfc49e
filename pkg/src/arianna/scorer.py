"""Consistency scoring and replacement-candidate generation.

Scoring judges each word position against its trigram context only: from
position 2 on, the two preceding words form the context, and the word is
unexpected when the model knows that context but the word is not among its
expected continuations. Unknown contexts never count against the text. The
consistency score is (word_count - unexpected) / word_count.

Higher orders do not change the score; they contribute additional replacement
candidates, listed highest order first and alphabetically within an order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .errors import EmptyTextError, MissingTrigramsError
from .model import ConsistencyModel
from .tokenizer import CONTEXT_JOINER, tokenize

JUDGE_ORDER = 3
PAPER_MODE = "paper-compatible"
STRICT_MODE = "strict"


@dataclass(frozen=True)
class Candidate:
    """One ranked replacement suggestion for a flagged word."""

    word: str
    order: int
    context: str
    frequency: int
    rank: int


@dataclass(frozen=True)
class Flag:
    """One unexpected word: where it sits, what triggered it, what could replace it."""

    position: int
    actual: str
    judge_context: str
    candidates: tuple[Candidate, ...]


@dataclass(frozen=True)
class ScoreReport:
    """The outcome of scoring one text against one model.

    ``unevaluable`` is populated in strict mode only: it counts positions
    with no trigram context (0 and 1) plus positions whose context the model
    does not know. In both modes ``consistency`` is
    (word_count - unexpected) / word_count.
    """

    word_count: int
    as_expected: int
    unexpected: int
    consistency: float
    flags: tuple[Flag, ...]
    model_name: str
    mode: str
    unevaluable: int | None = None


def generate_candidates(
    words: Sequence[str], position: int, model: ConsistencyModel, actual: str | None = None
) -> list[Candidate]:
    """Ranked replacements for the word at ``position``.

    For each order the model carries, from highest to lowest, the preceding
    order-1 words form a context (skipped when the position is too early for
    it); every expected word other than the actual one becomes a candidate,
    alphabetical within its order group. Duplicate words arriving from
    different orders are kept: they carry distinct context evidence.
    """
    if actual is None:
        actual = words[position]
    raw: list[tuple[str, int, str, int]] = []
    for order in sorted(model.orders, reverse=True):
        if position < order - 1:
            continue
        context = CONTEXT_JOINER.join(words[position - order + 1 : position])
        expected = model.expected_words(context, order)
        for word in sorted(w for w in expected if w != actual):
            raw.append((word, order, context, expected[word]))
    return [
        Candidate(word=word, order=order, context=context, frequency=frequency, rank=rank)
        for rank, (word, order, context, frequency) in enumerate(raw, start=1)
    ]


def _score(text: str, model: ConsistencyModel, strict: bool) -> ScoreReport:
    if JUDGE_ORDER not in model.orders:
        raise MissingTrigramsError(
            f"model {model.name!r} has no trigram entries (orders: {sorted(model.orders)}); "
            "scoring requires order 3"
        )
    words = [t.text for t in tokenize(text)]
    if not words:
        raise EmptyTextError("cannot score: text contains no word tokens")

    flags: list[Flag] = []
    unevaluable = min(len(words), 2)
    evaluable_expected = 0
    for position in range(2, len(words)):
        context = words[position - 2] + CONTEXT_JOINER + words[position - 1]
        expected = model.expected_words(context, JUDGE_ORDER)
        if not expected:
            unevaluable += 1
        elif words[position] in expected:
            evaluable_expected += 1
        else:
            flags.append(
                Flag(
                    position=position,
                    actual=words[position],
                    judge_context=context,
                    candidates=tuple(generate_candidates(words, position, model)),
                )
            )

    word_count = len(words)
    unexpected = len(flags)
    return ScoreReport(
        word_count=word_count,
        as_expected=evaluable_expected if strict else word_count - unexpected,
        unexpected=unexpected,
        consistency=(word_count - unexpected) / word_count,
        flags=tuple(flags),
        model_name=model.name,
        mode=STRICT_MODE if strict else PAPER_MODE,
        unevaluable=unevaluable if strict else None,
    )


def score(text: str, model: ConsistencyModel) -> ScoreReport:
    """Score ``text`` against ``model``; unknown contexts count as expected."""
    return _score(text, model, strict=False)


def score_strict(text: str, model: ConsistencyModel) -> ScoreReport:
    """Like :func:`score`, but unevaluable positions are reported separately.

    The headline consistency value is identical to :func:`score`; the report
    satisfies as_expected + unexpected + unevaluable = word_count.
    """
    return _score(text, model, strict=True)


def report_to_dict(report: ScoreReport) -> dict[str, Any]:
    """The report's stable serialization (used by the CLI and the service)."""
    doc: dict[str, Any] = {
        "word_count": report.word_count,
        "as_expected": report.as_expected,
        "unexpected": report.unexpected,
    }
    if report.unevaluable is not None:
        doc["unevaluable"] = report.unevaluable
    doc.update(
        {
            "consistency": report.consistency,
            "mode": report.mode,
            "model_name": report.model_name,
            "flags": [
                {
                    "position": flag.position,
                    "actual": flag.actual,
                    "judge_context": flag.judge_context,
                    "candidates": [
                        {
                            "word": c.word,
                            "order": c.order,
                            "context": c.context,
                            "frequency": c.frequency,
                            "rank": c.rank,
                        }
                        for c in flag.candidates
                    ],
                }
                for flag in report.flags
            ],
        }
    )
    return doc


def report_from_dict(doc: dict[str, Any]) -> ScoreReport:
    """Rebuild a report from its serialized form."""
    return ScoreReport(
        word_count=doc["word_count"],
        as_expected=doc["as_expected"],
        unexpected=doc["unexpected"],
        consistency=doc["consistency"],
        mode=doc["mode"],
        model_name=doc["model_name"],
        unevaluable=doc.get("unevaluable"),
        flags=tuple(
            Flag(
                position=f["position"],
                actual=f["actual"],
                judge_context=f["judge_context"],
                candidates=tuple(
                    Candidate(
                        word=c["word"],
                        order=c["order"],
                        context=c["context"],
                        frequency=c["frequency"],
                        rank=c["rank"],
                    )
                    for c in f["candidates"]
                ),
            )
            for f in doc["flags"]
        ),
    )
