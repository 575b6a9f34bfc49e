"""Reading training and evaluation text from files, directories, or literals.

File content must be valid UTF-8; anything else is rejected with the path and
byte offset rather than silently repaired, so upstream encoding problems stay
visible. Multiple files are concatenated in sorted path order, joined by a
single newline, which keeps the content checksum stable across runs.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import CorpusError, EncodingError


def text_checksum(text: str) -> str:
    """SHA-256 hex digest of the text's UTF-8 bytes."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class CorpusSource:
    """An ordered set of text files, or one literal string.

    ``paths`` are kept in sorted order so concatenation is reproducible.
    """

    paths: tuple[Path, ...] = ()
    literal: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(sorted(self.paths, key=str)))

    @classmethod
    def from_literal(cls, text: str) -> "CorpusSource":
        return cls(literal=text)

    @classmethod
    def from_paths(cls, paths: Iterable[str | Path], extension: str = ".txt") -> "CorpusSource":
        """Build a source from files and/or directories.

        Directories are expanded (non-recursively) to their files with the
        given extension; explicit file paths are taken as-is.
        """
        resolved: list[Path] = []
        for raw in paths:
            path = Path(raw)
            if path.is_dir():
                resolved.extend(p for p in path.iterdir() if p.is_file() and p.suffix == extension)
            else:
                resolved.append(path)
        return cls(paths=tuple(resolved))


def read_corpus(source: CorpusSource) -> str:
    """Return the source's text; files joined with a single newline."""
    if source.literal is not None:
        return source.literal
    parts: list[str] = []
    for path in source.paths:
        try:
            data = path.read_bytes()
        except FileNotFoundError:
            raise CorpusError(f"corpus file not found: {path}") from None
        except OSError as exc:
            raise CorpusError(f"cannot read corpus file {path}: {exc}") from exc
        try:
            parts.append(data.decode("utf-8"))
        except UnicodeDecodeError as exc:
            raise EncodingError(str(path), exc.start) from None
    return "\n".join(parts)


def corpus_checksum(source: CorpusSource) -> str:
    """Checksum of the concatenated corpus text."""
    return text_checksum(read_corpus(source))
