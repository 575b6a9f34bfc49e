import random

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from arianna.errors import InvalidOrderError, ModelFormatError, ModelVersionError
from arianna.model import (
    ConsistencyModel,
    ModelMeta,
    NGramEntry,
    build_model,
    load_model,
    parse_model,
    save_model,
    serialize_model,
)

VOCAB = "alpha bravo charlie delta echo".split()

words_lists = st.lists(st.sampled_from(VOCAB), max_size=60)


def entry_tuples(model):
    return {(e.order, e.context, e.expected_word, e.frequency) for e in model.entries}


class TestBuild:
    def test_jane_paragraph_has_exactly_one_entry(self, jane_model):
        assert entry_tuples(jane_model) == {(3, "there_was", "no", 2)}

    def test_empty_corpus(self):
        model = build_model("")
        assert len(model) == 0
        assert model.meta.token_count == 0

    def test_repeated_trigram_kept_others_dropped(self):
        model = build_model("a b c a b c", orders={3}, min_frequency=2)
        assert entry_tuples(model) == {(3, "a_b", "c", 2)}

    def test_default_parameters(self):
        model = build_model("x", name="m")
        assert model.orders == frozenset({3, 4, 5})
        assert model.min_frequency == 2
        assert model.kind == "internal"

    def test_build_is_deterministic(self, jane_text):
        assert build_model(jane_text, name="m") == build_model(jane_text, name="m")

    def test_checksum_is_over_source_text(self, jane_text, jane_model):
        from arianna.corpus_io import text_checksum

        assert jane_model.meta.checksum == text_checksum(jane_text)

    @pytest.mark.parametrize("bad", [0, -1])
    def test_min_frequency_below_one_rejected(self, bad):
        with pytest.raises(ValueError):
            build_model("a b c", min_frequency=bad)

    def test_invalid_order_rejected(self):
        with pytest.raises(InvalidOrderError):
            build_model("a b c", orders={2, 3})

    def test_bad_kind_and_name_rejected(self):
        with pytest.raises(ValueError):
            build_model("a b c", kind="sideways")
        with pytest.raises(ValueError):
            build_model("a b c", name="has space")

    @given(words_lists)
    @settings(max_examples=60)
    def test_entries_match_brute_force(self, words):
        text = " ".join(words)
        model = build_model(text, name="m")
        assert entry_tuples(model) == oracle.entry_set(words, {3, 4, 5}, 2)

    @given(words_lists, st.integers(min_value=1, max_value=3))
    @settings(max_examples=40)
    def test_threshold_monotonicity(self, words, k):
        text = " ".join(words)
        lower = build_model(text, min_frequency=k, name="m")
        higher = build_model(text, min_frequency=k + 1, name="m")
        assert entry_tuples(higher) <= entry_tuples(lower)


class TestQuery:
    def test_known_context(self, jane_model):
        assert jane_model.expected_words("there_was", 3) == {"no": 2}

    def test_unknown_context_is_empty(self, jane_model):
        assert jane_model.expected_words("was_na", 3) == {}

    def test_derived_small_corpus(self):
        model = build_model("a b c a b c", orders={3}, min_frequency=2)
        assert model.expected_words("a_b", 3) == {"c": 2}

    def test_order_not_in_model_raises(self):
        model = build_model("a b c a b c", orders={3})
        with pytest.raises(InvalidOrderError):
            model.expected_words("a_b", 4)

    @given(words_lists)
    @settings(max_examples=40)
    def test_query_agrees_with_linear_scan(self, words):
        model = build_model(" ".join(words), name="m")
        contexts = {(e.context, e.order) for e in model.entries}
        contexts.add(("alpha_bravo", 3))
        for context, order in contexts:
            scanned = {
                e.expected_word: e.frequency
                for e in model.entries
                if e.context == context and e.order == order
            }
            assert model.expected_words(context, order) == scanned

    def test_entry_counts(self, external_model):
        assert external_model.entry_counts == {5: 0, 4: 7, 3: 5}


def random_entries(rng, count):
    entries = set()
    while len(entries) < count:
        order = rng.choice([3, 4, 5])
        context = "_".join(f"w{rng.randrange(40)}" for _ in range(order - 1))
        entries.add((order, context, f"w{rng.randrange(40)}"))
    return [
        NGramEntry(order=o, context=c, expected_word=w, frequency=rng.randint(2, 99))
        for o, c, w in entries
    ]


class TestPersistence:
    def test_round_trip_jane(self, jane_model, tmp_path):
        path = tmp_path / "je.model"
        save_model(jane_model, path)
        loaded = load_model(path)
        assert loaded == jane_model
        assert loaded.expected_words("there_was", 3) == {"no": 2}

    def test_round_trip_empty(self, tmp_path):
        model = build_model("", name="empty")
        path = tmp_path / "empty.model"
        save_model(model, path)
        assert load_model(path) == model

    def test_round_trip_large_random(self, tmp_path):
        rng = random.Random(7)
        model = ConsistencyModel(
            kind="external",
            name="rand",
            orders={3, 4, 5},
            min_frequency=2,
            entries=random_entries(rng, 10_000),
            meta=ModelMeta(checksum="00" * 32, token_count=123),
        )
        path = tmp_path / "rand.model"
        save_model(model, path)
        loaded = load_model(path)
        assert entry_tuples(loaded) == entry_tuples(model)
        assert loaded == model

    def test_serialization_is_byte_deterministic(self, jane_model, tmp_path):
        first = serialize_model(jane_model)
        assert first == serialize_model(jane_model)
        path = tmp_path / "je.model"
        save_model(jane_model, path)
        assert serialize_model(load_model(path)) == first

    def test_records_sorted_order_desc_context_asc_word_asc(self, external_model):
        lines = serialize_model(external_model).splitlines()[2:]
        keys = []
        for line in lines:
            order, context, word, _ = line.split("\t")
            keys.append((-int(order), context, word))
        assert keys == sorted(keys)

    def test_file_layout(self, jane_model, tmp_path):
        save_model(jane_model, tmp_path / "je.model")
        content = (tmp_path / "je.model").read_text(encoding="utf-8")
        lines = content.splitlines()
        assert lines[0] == "#arianna-model v1"
        assert lines[1].startswith("#meta kind=internal name=je orders=3,4,5 min_frequency=2 ")
        assert lines[2] == "3\tthere_was\tno\t2"
        assert content.endswith("\n") and "\r" not in content


class TestLoadErrors:
    def test_version_mismatch(self, tmp_path):
        path = tmp_path / "v2.model"
        path.write_text("#arianna-model v2\n#meta kind=internal name=x orders=3 min_frequency=2 tokens=0 checksum=aa\n")
        with pytest.raises(ModelVersionError):
            load_model(path)

    def test_missing_header(self, tmp_path):
        path = tmp_path / "bad.model"
        path.write_text("hello\n")
        with pytest.raises(ModelFormatError):
            load_model(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ModelFormatError):
            load_model(tmp_path / "absent.model")

    @pytest.mark.parametrize(
        "record",
        [
            "3\tonly_three\tfields",
            "x\ta_b\tc\t2",
            "3\ta_b\tc\tmany",
            "4\ta_b\tc\t2\textra",
        ],
    )
    def test_malformed_record_reports_line_number(self, tmp_path, record):
        path = tmp_path / "bad.model"
        path.write_text(
            "#arianna-model v1\n"
            "#meta kind=internal name=x orders=3,4 min_frequency=2 tokens=0 checksum=aa\n"
            "3\ta_b\tc\t5\n"
            f"{record}\n"
        )
        with pytest.raises(ModelFormatError) as err:
            load_model(path)
        assert err.value.line_number == 4

    def test_undeclared_order_rejected(self, tmp_path):
        path = tmp_path / "bad.model"
        path.write_text(
            "#arianna-model v1\n"
            "#meta kind=internal name=x orders=3 min_frequency=2 tokens=0 checksum=aa\n"
            "4\ta_b_c\td\t2\n"
        )
        with pytest.raises(ModelFormatError) as err:
            load_model(path)
        assert err.value.line_number == 3

    def test_frequency_below_threshold_rejected(self, tmp_path):
        path = tmp_path / "bad.model"
        path.write_text(
            "#arianna-model v1\n"
            "#meta kind=internal name=x orders=3 min_frequency=2 tokens=0 checksum=aa\n"
            "3\ta_b\tc\t1\n"
        )
        with pytest.raises(ModelFormatError) as err:
            load_model(path)
        assert err.value.line_number == 3

    def test_duplicate_record_rejected(self, tmp_path):
        path = tmp_path / "bad.model"
        path.write_text(
            "#arianna-model v1\n"
            "#meta kind=internal name=x orders=3 min_frequency=2 tokens=0 checksum=aa\n"
            "3\ta_b\tc\t2\n"
            "3\ta_b\tc\t3\n"
        )
        with pytest.raises(ModelFormatError) as err:
            load_model(path)
        assert err.value.line_number == 4

    def test_meta_line_missing_field(self, tmp_path):
        path = tmp_path / "bad.model"
        path.write_text("#arianna-model v1\n#meta kind=internal name=x orders=3\n")
        with pytest.raises(ModelFormatError):
            load_model(path)

    def test_checksum_mismatch_warns(self, jane_model, tmp_path):
        path = tmp_path / "je.model"
        save_model(jane_model, path)
        with pytest.warns(UserWarning, match="checksum"):
            load_model(path, expected_checksum="ff" * 32)

    def test_matching_checksum_does_not_warn(self, jane_model, tmp_path, recwarn):
        path = tmp_path / "je.model"
        save_model(jane_model, path)
        load_model(path, expected_checksum=jane_model.meta.checksum)
        assert not recwarn.list


def test_parse_model_equals_load(jane_model):
    assert parse_model(serialize_model(jane_model)) == jane_model


def test_model_is_immutable_under_query(self_model=None):
    model = build_model("a b c a b c", orders={3})
    result = model.expected_words("a_b", 3)
    result["c"] = 999
    assert model.expected_words("a_b", 3) == {"c": 2}
