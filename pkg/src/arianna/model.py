"""Consistency datasets: build them from text, query them, persist them.

A model records, per n-gram order, which last words followed each context
often enough in the training text. There is no probability estimation and no
smoothing: queries are exact set membership over the surviving n-grams, and
each entry keeps its raw occurrence count for ranking.

Model files use the "arianna-model v1" format: a header line, one metadata
line, then one tab-separated record per entry, sorted by (order descending,
context ascending, expected word ascending). Serialization is byte
deterministic for a given model.
"""

from __future__ import annotations

import re
import warnings
from collections import Counter
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable

from .corpus_io import text_checksum
from .errors import InvalidOrderError, ModelFormatError, ModelVersionError
from .tokenizer import check_orders, extract_ngrams, tokenize

FORMAT_VERSION = 1
FORMAT_HEADER = "#arianna-model v1"
DEFAULT_ORDERS = frozenset({3, 4, 5})
DEFAULT_MIN_FREQUENCY = 2
KINDS = ("internal", "external")

_NAME = re.compile(r"^[^\s=]+$")


@dataclass(frozen=True)
class NGramEntry:
    """One (order, context, expected word, frequency) record."""

    order: int
    context: str
    expected_word: str
    frequency: int


def _entry_key(entry: NGramEntry) -> tuple[int, str, str]:
    return (-entry.order, entry.context, entry.expected_word)


@dataclass(frozen=True)
class ModelMeta:
    """Provenance carried alongside the entries.

    ``created_at`` is informational only and is not persisted, so that model
    files stay byte-identical across rebuilds of the same input.
    """

    checksum: str
    token_count: int
    created_at: str | None = None
    format_version: int = FORMAT_VERSION


class ConsistencyModel:
    """Immutable, indexed collection of :class:`NGramEntry` records."""

    def __init__(
        self,
        kind: str,
        name: str,
        orders: Iterable[int],
        min_frequency: int,
        entries: Iterable[NGramEntry],
        meta: ModelMeta,
    ):
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
        if not _NAME.match(name):
            raise ValueError("model name must be non-empty with no whitespace or '='")
        if min_frequency < 1:
            raise ValueError(f"min_frequency must be >= 1, got {min_frequency}")
        order_set = check_orders(orders)
        if not order_set:
            raise InvalidOrderError("a model needs at least one n-gram order")
        self.kind = kind
        self.name = name
        self.orders = order_set
        self.min_frequency = min_frequency
        self.entries: tuple[NGramEntry, ...] = tuple(sorted(entries, key=_entry_key))
        self.meta = meta
        self._index: dict[tuple[str, int], dict[str, int]] = {}
        for entry in self.entries:
            if entry.order not in order_set:
                raise ValueError(f"entry order {entry.order} not in model orders {sorted(order_set)}")
            if entry.frequency < min_frequency:
                raise ValueError(
                    f"entry frequency {entry.frequency} below min_frequency {min_frequency}"
                )
            bucket = self._index.setdefault((entry.context, entry.order), {})
            if entry.expected_word in bucket:
                raise ValueError(
                    f"duplicate entry ({entry.order}, {entry.context!r}, {entry.expected_word!r})"
                )
            bucket[entry.expected_word] = entry.frequency

    def expected_words(self, context: str, order: int) -> dict[str, int]:
        """Expected last words for ``(context, order)``, as word -> frequency.

        An unknown context is an empty result, not an error. Asking for an
        order the model was not built with is a programming error.
        """
        if order not in self.orders:
            raise InvalidOrderError(
                f"model {self.name!r} has no order-{order} entries (orders: {sorted(self.orders)})"
            )
        return dict(self._index.get((context, order), ()))

    @property
    def entry_counts(self) -> dict[int, int]:
        """Entry count per order, including zero counts, order descending."""
        counts = {order: 0 for order in sorted(self.orders, reverse=True)}
        for entry in self.entries:
            counts[entry.order] += 1
        return counts

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        """Observational identity: entries, parameters, persisted metadata."""
        if not isinstance(other, ConsistencyModel):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.name == other.name
            and self.orders == other.orders
            and self.min_frequency == other.min_frequency
            and self.entries == other.entries
            and self.meta.checksum == other.meta.checksum
            and self.meta.token_count == other.meta.token_count
        )

    def __repr__(self) -> str:
        return (
            f"ConsistencyModel(kind={self.kind!r}, name={self.name!r}, "
            f"orders={sorted(self.orders)}, entries={len(self.entries)})"
        )


def build_model(
    text: str,
    orders: Iterable[int] = DEFAULT_ORDERS,
    min_frequency: int = DEFAULT_MIN_FREQUENCY,
    kind: str = "internal",
    name: str = "model",
) -> ConsistencyModel:
    """Train a consistency model on ``text``.

    Tokenizes, extracts overlapping n-grams of every requested order, counts
    identical full n-grams, discards those occurring fewer than
    ``min_frequency`` times, and splits the survivors into context and
    expected last word. The defaults (orders 3-5, threshold 2) give the
    standard internal model.
    """
    if min_frequency < 1:
        raise ValueError(f"min_frequency must be >= 1, got {min_frequency}")
    tokens = tokenize(text)
    counts = Counter(
        (window.order, window.context, window.last_word)
        for window in extract_ngrams(tokens, orders)
    )
    entries = [
        NGramEntry(order=order, context=context, expected_word=word, frequency=freq)
        for (order, context, word), freq in counts.items()
        if freq >= min_frequency
    ]
    meta = ModelMeta(
        checksum=text_checksum(text),
        token_count=len(tokens),
        created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )
    return ConsistencyModel(
        kind=kind,
        name=name,
        orders=orders,
        min_frequency=min_frequency,
        entries=entries,
        meta=meta,
    )


def serialize_model(model: ConsistencyModel) -> str:
    """The model's byte-deterministic arianna-model v1 text."""
    orders_list = ",".join(str(o) for o in sorted(model.orders))
    lines = [
        FORMAT_HEADER,
        f"#meta kind={model.kind} name={model.name} orders={orders_list} "
        f"min_frequency={model.min_frequency} tokens={model.meta.token_count} "
        f"checksum={model.meta.checksum}",
    ]
    for entry in model.entries:
        lines.append(f"{entry.order}\t{entry.context}\t{entry.expected_word}\t{entry.frequency}")
    return "\n".join(lines) + "\n"


def save_model(model: ConsistencyModel, destination: str | Path) -> None:
    """Write the model to ``destination`` in arianna-model v1 format."""
    Path(destination).write_text(serialize_model(model), encoding="utf-8", newline="\n")


def _parse_meta(line: str) -> dict[str, str]:
    if not line.startswith("#meta "):
        raise ModelFormatError("expected '#meta ...' on line 2", line_number=2)
    fields: dict[str, str] = {}
    for part in line[len("#meta ") :].split(" "):
        key, sep, value = part.partition("=")
        if not sep:
            raise ModelFormatError(f"malformed meta field {part!r}", line_number=2)
        fields[key] = value
    missing = {"kind", "name", "orders", "min_frequency", "tokens", "checksum"} - fields.keys()
    if missing:
        raise ModelFormatError(f"meta line missing field(s): {sorted(missing)}", line_number=2)
    return fields


def parse_model(content: str, expected_checksum: str | None = None) -> ConsistencyModel:
    """Parse arianna-model v1 text into a model.

    Raises :class:`ModelVersionError` for an unknown version and
    :class:`ModelFormatError` (with the line number) for malformed records.
    A checksum differing from ``expected_checksum`` only warns: the entries
    are still usable, but they were trained on different source text.
    """
    lines = content.splitlines()
    if not lines or not lines[0].startswith("#arianna-model"):
        raise ModelFormatError("not an arianna-model file (missing header)", line_number=1)
    if lines[0] != FORMAT_HEADER:
        raise ModelVersionError(
            f"unsupported model format {lines[0][len('#arianna-model '):]!r}; "
            f"this build reads v{FORMAT_VERSION}",
            line_number=1,
        )
    if len(lines) < 2:
        raise ModelFormatError("missing meta line", line_number=2)
    meta_fields = _parse_meta(lines[1])
    try:
        orders = frozenset(int(o) for o in meta_fields["orders"].split(",") if o)
        min_frequency = int(meta_fields["min_frequency"])
        token_count = int(meta_fields["tokens"])
    except ValueError as exc:
        raise ModelFormatError(f"bad meta value: {exc}", line_number=2) from None
    checksum = meta_fields["checksum"]
    if expected_checksum is not None and checksum != expected_checksum:
        warnings.warn(
            f"model checksum {checksum[:12]}... does not match expected "
            f"{expected_checksum[:12]}...: the model was trained on different source text",
            stacklevel=2,
        )

    entries: list[NGramEntry] = []
    seen: set[tuple[int, str, str]] = set()
    for line_number, line in enumerate(lines[2:], start=3):
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise ModelFormatError(
                f"expected 4 tab-separated fields, got {len(parts)}", line_number=line_number
            )
        try:
            order = int(parts[0])
            frequency = int(parts[3])
        except ValueError:
            raise ModelFormatError("order and frequency must be integers", line_number=line_number) from None
        if order not in orders:
            raise ModelFormatError(
                f"record order {order} not in declared orders {sorted(orders)}",
                line_number=line_number,
            )
        if frequency < min_frequency:
            raise ModelFormatError(
                f"frequency {frequency} below min_frequency {min_frequency}",
                line_number=line_number,
            )
        key = (order, parts[1], parts[2])
        if key in seen:
            raise ModelFormatError(f"duplicate record {key!r}", line_number=line_number)
        seen.add(key)
        entries.append(
            NGramEntry(order=order, context=parts[1], expected_word=parts[2], frequency=frequency)
        )
    meta = ModelMeta(checksum=checksum, token_count=token_count)
    try:
        return ConsistencyModel(
            kind=meta_fields["kind"],
            name=meta_fields["name"],
            orders=orders,
            min_frequency=min_frequency,
            entries=entries,
            meta=meta,
        )
    except (ValueError, InvalidOrderError) as exc:
        raise ModelFormatError(str(exc)) from None


def load_model(source: str | Path, expected_checksum: str | None = None) -> ConsistencyModel:
    """Read a model file; the inverse of :func:`save_model`."""
    path = Path(source)
    try:
        raw = path.read_bytes()
    except FileNotFoundError:
        raise ModelFormatError(f"model file not found: {path}") from None
    try:
        content = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ModelFormatError(f"model file is not UTF-8 (byte offset {exc.start})") from None
    return parse_model(content, expected_checksum=expected_checksum)
