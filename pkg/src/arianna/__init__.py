"""Consistency scoring for text corpora.

Train an n-gram consistency model on a text (or on a larger reference
corpus), measure which share of a text's words the model forecasts, flag the
unexpected ones with ranked replacement candidates, and keep an auditable
ledger of cleaning edits with the score after every step.
"""

from .corpus_io import CorpusSource, corpus_checksum, read_corpus, text_checksum
from .errors import (
    AriannaError,
    CorpusError,
    EditError,
    EmptyTextError,
    EncodingError,
    InvalidOrderError,
    MissingTrigramsError,
    ModelFormatError,
    ModelVersionError,
    NothingToUndoError,
    ReplayMismatchError,
    SessionFormatError,
)
from .model import (
    DEFAULT_MIN_FREQUENCY,
    DEFAULT_ORDERS,
    ConsistencyModel,
    ModelMeta,
    NGramEntry,
    build_model,
    load_model,
    parse_model,
    save_model,
    serialize_model,
)
from .scorer import (
    Candidate,
    Flag,
    ScoreReport,
    generate_candidates,
    report_from_dict,
    report_to_dict,
    score,
    score_strict,
)
from .session import (
    CleaningSession,
    Edit,
    export_session,
    import_session,
    open_session,
)
from .tokenizer import NGramWindow, Token, extract_ngrams, tokenize

__version__ = "0.1.0"

__all__ = [
    "AriannaError",
    "Candidate",
    "CleaningSession",
    "ConsistencyModel",
    "CorpusError",
    "CorpusSource",
    "DEFAULT_MIN_FREQUENCY",
    "DEFAULT_ORDERS",
    "Edit",
    "EditError",
    "EmptyTextError",
    "EncodingError",
    "Flag",
    "InvalidOrderError",
    "MissingTrigramsError",
    "ModelFormatError",
    "ModelMeta",
    "ModelVersionError",
    "NGramEntry",
    "NGramWindow",
    "NothingToUndoError",
    "ReplayMismatchError",
    "ScoreReport",
    "SessionFormatError",
    "Token",
    "build_model",
    "corpus_checksum",
    "export_session",
    "extract_ngrams",
    "generate_candidates",
    "import_session",
    "load_model",
    "open_session",
    "parse_model",
    "read_corpus",
    "report_from_dict",
    "report_to_dict",
    "save_model",
    "score",
    "score_strict",
    "serialize_model",
    "text_checksum",
    "tokenize",
]
