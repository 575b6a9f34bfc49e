"""Word tokenization and overlapping n-gram windows.

Normalization is deliberately small: split on whitespace, strip punctuation
and symbol characters (Unicode categories P* and S*) from both ends of each
chunk, lowercase, and replace interior underscores with hyphens so the
underscore stays unambiguous as the context joiner. Chunks with nothing left
after stripping are dropped. Interior apostrophes and hyphens survive, so
contractions ("don't") and hyphenated words ("out-door") remain one token.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidOrderError

SUPPORTED_ORDERS = frozenset({3, 4, 5})
CONTEXT_JOINER = "_"

_CHUNK = re.compile(r"\S+")


@dataclass(frozen=True)
class Token:
    """One normalized word.

    ``index`` is the 0-based word position; ``span`` is the byte offset range
    of the stripped word in the UTF-8 encoding of the original input.
    """

    text: str
    index: int
    span: tuple[int, int]


@dataclass(frozen=True)
class NGramWindow:
    """One overlapping n-gram split into its context and last word.

    ``context`` joins the first ``order - 1`` token texts with underscores;
    ``start_index`` is the word index of the window's first token.
    """

    order: int
    context: str
    last_word: str
    start_index: int

    @property
    def words(self) -> tuple[str, ...]:
        return (*self.context.split(CONTEXT_JOINER), self.last_word)


def _is_stripped(ch: str) -> bool:
    return unicodedata.category(ch)[0] in ("P", "S")


def _core_range(chunk: str) -> tuple[int, int]:
    """Indices of the chunk once edge punctuation/symbols are removed."""
    start, end = 0, len(chunk)
    while start < end and _is_stripped(chunk[start]):
        start += 1
    while end > start and _is_stripped(chunk[end - 1]):
        end -= 1
    return start, end


def normalize_word(chunk: str) -> str:
    """Normalize one whitespace-free chunk; empty when nothing survives."""
    start, end = _core_range(chunk)
    return chunk[start:end].lower().replace("_", "-")


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into normalized word tokens in source order.

    Pure function; empty input (or input of pure punctuation) yields ``[]``.
    """
    tokens: list[Token] = []
    char_pos = 0
    byte_pos = 0
    for match in _CHUNK.finditer(text):
        start, end = _core_range(match.group())
        if start == end:
            continue
        word = match.group()[start:end].lower().replace("_", "-")
        char_start = match.start() + start
        char_end = match.start() + end
        byte_pos += len(text[char_pos:char_start].encode("utf-8"))
        byte_start = byte_pos
        byte_pos += len(text[char_start:char_end].encode("utf-8"))
        char_pos = char_end
        tokens.append(Token(text=word, index=len(tokens), span=(byte_start, byte_pos)))
    return tokens


def check_orders(orders: Iterable[int]) -> frozenset[int]:
    """Validate a set of n-gram orders, returning it as a frozenset."""
    order_set = frozenset(orders)
    bad = order_set - SUPPORTED_ORDERS
    if bad:
        raise InvalidOrderError(
            f"unsupported n-gram order(s) {sorted(bad)}; supported orders are "
            f"{sorted(SUPPORTED_ORDERS)}"
        )
    return order_set


def extract_ngrams(tokens: Sequence[Token], orders: Iterable[int]) -> list[NGramWindow]:
    """All overlapping windows of the requested orders.

    Output is grouped by order descending (5, 4, 3), then start index
    ascending. Orders longer than the token stream contribute nothing.
    """
    order_set = check_orders(orders)
    words = [t.text for t in tokens]
    windows: list[NGramWindow] = []
    for order in sorted(order_set, reverse=True):
        for start in range(len(words) - order + 1):
            windows.append(
                NGramWindow(
                    order=order,
                    context=CONTEXT_JOINER.join(words[start : start + order - 1]),
                    last_word=words[start + order - 1],
                    start_index=start,
                )
            )
    return windows
