import pytest

from arianna.corpus_io import CorpusSource, corpus_checksum, read_corpus, text_checksum
from arianna.errors import CorpusError, EncodingError
from arianna.model import build_model


def test_two_files_joined_with_newline(tmp_path):
    (tmp_path / "one.txt").write_text("a b c")
    (tmp_path / "two.txt").write_text("d e f")
    source = CorpusSource.from_paths([tmp_path / "one.txt", tmp_path / "two.txt"])
    assert read_corpus(source) == "a b c\nd e f"


def test_literal_returned_verbatim():
    assert read_corpus(CorpusSource.from_literal("exact  text\n")) == "exact  text\n"


def test_paths_sorted_regardless_of_argument_order(tmp_path):
    (tmp_path / "b.txt").write_text("second")
    (tmp_path / "a.txt").write_text("first")
    forward = CorpusSource.from_paths([tmp_path / "a.txt", tmp_path / "b.txt"])
    backward = CorpusSource.from_paths([tmp_path / "b.txt", tmp_path / "a.txt"])
    assert read_corpus(forward) == read_corpus(backward) == "first\nsecond"


def test_directory_expansion_filters_extension(tmp_path):
    (tmp_path / "one.txt").write_text("x")
    (tmp_path / "two.txt").write_text("y")
    (tmp_path / "skip.md").write_text("z")
    source = CorpusSource.from_paths([tmp_path])
    assert [p.name for p in source.paths] == ["one.txt", "two.txt"]


def test_directory_checksum_stable(tmp_path):
    for name in ["c.txt", "a.txt", "b.txt"]:
        (tmp_path / name).write_text(f"content of {name}")
    first = corpus_checksum(CorpusSource.from_paths([tmp_path]))
    second = corpus_checksum(CorpusSource.from_paths([tmp_path]))
    assert first == second


def test_missing_file(tmp_path):
    with pytest.raises(CorpusError):
        read_corpus(CorpusSource.from_paths([tmp_path / "absent.txt"]))


def test_invalid_utf8_reports_path_and_offset(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_bytes(b"ok \xff more")
    with pytest.raises(EncodingError) as err:
        read_corpus(CorpusSource.from_paths([path]))
    assert err.value.offset == 3
    assert str(path) in str(err.value)


def test_model_embeds_corpus_checksum(tmp_path):
    (tmp_path / "t.txt").write_text("a b c a b c")
    source = CorpusSource.from_paths([tmp_path / "t.txt"])
    text = read_corpus(source)
    model = build_model(text, name="m")
    assert model.meta.checksum == corpus_checksum(source) == text_checksum(text)
