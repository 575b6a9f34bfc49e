"""Cleaning sessions: an append-only edit ledger with a score after every step.

A session holds the original text (never mutated), the current token stream,
and one score per state, starting at seq 0. Edits are word-level replacements
only. Undo never deletes history: it appends a compensating edit, so the full
trail of decisions stays auditable and the whole session can be replayed and
verified from its exported document.
"""

from __future__ import annotations

import uuid
import warnings
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Any

from .errors import (
    EditError,
    NothingToUndoError,
    ReplayMismatchError,
    SessionFormatError,
)
from .model import ConsistencyModel
from .scorer import ScoreReport, report_to_dict, score
from .tokenizer import tokenize

SESSION_FORMAT_VERSION = 1
SOURCE_ACCEPTED = "accepted-candidate"
SOURCE_MANUAL = "manual"
SOURCE_UNDO = "undo"
EDIT_SOURCES = (SOURCE_ACCEPTED, SOURCE_MANUAL)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _normalize_replacement(new_word: str) -> str:
    tokens = tokenize(new_word)
    if len(tokens) != 1:
        raise EditError(
            f"replacement {new_word!r} must normalize to exactly one word, got {len(tokens)}"
        )
    return tokens[0].text


@dataclass(frozen=True)
class Edit:
    """One applied word replacement."""

    seq: int
    position: int
    old_word: str
    new_word: str
    source: str
    applied_at: str


class CleaningSession:
    """Mutable text plus its append-only provenance trail.

    One writer per session; share exported snapshots, not the object.
    """

    def __init__(self, text: str, model: ConsistencyModel, session_id: str | None = None):
        initial = score(text, model)
        self.id = session_id if session_id is not None else uuid.uuid4().hex
        self.original_text = text
        self.model = model
        self.current_tokens: list[str] = [t.text for t in tokenize(text)]
        self.edit_log: list[Edit] = []
        self.score_history: list[tuple[int, ScoreReport]] = [(0, initial)]
        self._undo_stack: list[int] = []

    @property
    def seq(self) -> int:
        """Number of edits applied so far; also the latest history seq."""
        return len(self.edit_log)

    @property
    def current_text(self) -> str:
        return " ".join(self.current_tokens)

    @property
    def latest_report(self) -> ScoreReport:
        return self.score_history[-1][1]

    def _apply(
        self,
        position: int,
        new_word: str,
        source: str,
        applied_at: str | None = None,
    ) -> ScoreReport:
        if not 0 <= position < len(self.current_tokens):
            raise EditError(
                f"position {position} out of range (text has {len(self.current_tokens)} words)"
            )
        word = _normalize_replacement(new_word)
        edit = Edit(
            seq=self.seq + 1,
            position=position,
            old_word=self.current_tokens[position],
            new_word=word,
            source=source,
            applied_at=applied_at if applied_at is not None else _now(),
        )
        self.current_tokens[position] = word
        self.edit_log.append(edit)
        if source == SOURCE_UNDO:
            self._undo_stack.pop()
        else:
            self._undo_stack.append(len(self.edit_log) - 1)
        report = score(self.current_text, self.model)
        self.score_history.append((edit.seq, report))
        return report

    def apply_edit(self, position: int, new_word: str, source: str = SOURCE_MANUAL) -> ScoreReport:
        """Replace the word at ``position``, rescore, and return the new report."""
        if source not in EDIT_SOURCES:
            raise EditError(f"source must be one of {EDIT_SOURCES}, got {source!r}")
        return self._apply(position, new_word, source)

    def undo(self) -> ScoreReport:
        """Compensate the most recent still-active edit and rescore."""
        if not self._undo_stack:
            raise NothingToUndoError("nothing to undo")
        target = self.edit_log[self._undo_stack[-1]]
        return self._apply(target.position, target.old_word, SOURCE_UNDO)


def open_session(text: str, model: ConsistencyModel) -> CleaningSession:
    """Start a session on ``text``; scorer errors propagate unchanged."""
    return CleaningSession(text, model)


def export_session(session: CleaningSession) -> dict[str, Any]:
    """The session's portable document: inputs, edits, and every score."""
    return {
        "format_version": SESSION_FORMAT_VERSION,
        "id": session.id,
        "model": {
            "name": session.model.name,
            "checksum": session.model.meta.checksum,
        },
        "original_text": session.original_text,
        "edits": [
            {
                "seq": e.seq,
                "position": e.position,
                "old_word": e.old_word,
                "new_word": e.new_word,
                "source": e.source,
                "applied_at": e.applied_at,
            }
            for e in session.edit_log
        ],
        "score_history": [
            {"seq": seq, "report": report_to_dict(report)}
            for seq, report in session.score_history
        ],
    }


def _require(doc: dict[str, Any], field: str) -> Any:
    if field not in doc:
        raise SessionFormatError(f"session document missing field {field!r}")
    return doc[field]


def _verify_point(seq: int, recorded: Any, actual: ScoreReport) -> None:
    if not isinstance(recorded, dict) or recorded.get("seq") != seq or "report" not in recorded:
        raise SessionFormatError(f"score_history entry for seq {seq} is malformed")
    if recorded["report"] != report_to_dict(actual):
        raise ReplayMismatchError(
            seq, "recorded report does not match the replayed score"
        )


def import_session(doc: dict[str, Any], model: ConsistencyModel) -> CleaningSession:
    """Rebuild a session from its document, verifying every recorded score.

    Replays the edit log over the original text with ``model`` and compares
    each recomputed report against the recorded one, so a tampered document
    or a drifted model fails at the first diverging seq.
    """
    if _require(doc, "format_version") != SESSION_FORMAT_VERSION:
        raise SessionFormatError(
            f"unsupported session format_version {doc['format_version']!r}"
        )
    model_ref = _require(doc, "model")
    edits = _require(doc, "edits")
    history = _require(doc, "score_history")
    if not isinstance(edits, list) or not isinstance(history, list):
        raise SessionFormatError("edits and score_history must be lists")
    if len(history) != len(edits) + 1:
        raise SessionFormatError(
            f"score_history has {len(history)} points for {len(edits)} edits; expected edits + 1"
        )
    if model_ref.get("checksum") != model.meta.checksum or model_ref.get("name") != model.name:
        warnings.warn(
            f"session was recorded against model {model_ref.get('name')!r} "
            f"(checksum {str(model_ref.get('checksum'))[:12]}...), replaying with "
            f"{model.name!r}",
            stacklevel=2,
        )

    session = CleaningSession(_require(doc, "original_text"), model, session_id=_require(doc, "id"))
    _verify_point(0, history[0], session.latest_report)
    for i, edit in enumerate(edits):
        seq = i + 1
        if edit.get("seq") != seq:
            raise SessionFormatError(f"edit {i} has seq {edit.get('seq')!r}, expected {seq}")
        source = edit.get("source")
        if source not in (*EDIT_SOURCES, SOURCE_UNDO):
            raise SessionFormatError(f"edit {seq} has unknown source {source!r}")
        position = edit.get("position")
        if not isinstance(position, int) or not 0 <= position < len(session.current_tokens):
            raise ReplayMismatchError(seq, f"edit position {position!r} does not replay")
        if edit.get("old_word") != session.current_tokens[position]:
            raise ReplayMismatchError(
                seq,
                f"recorded old_word {edit.get('old_word')!r} does not match the "
                f"replayed text ({session.current_tokens[position]!r})",
            )
        if source == SOURCE_UNDO and not session._undo_stack:
            raise ReplayMismatchError(seq, "undo edit with no active edit to compensate")
        applied_at = edit.get("applied_at")
        if not isinstance(applied_at, str):
            raise SessionFormatError(f"edit {seq} is missing applied_at")
        try:
            session._apply(position, edit.get("new_word", ""), source, applied_at)
        except EditError as exc:
            raise ReplayMismatchError(seq, str(exc)) from None
        _verify_point(seq, history[i + 1], session.latest_report)
    return session
