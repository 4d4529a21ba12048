import itertools

import pytest

from signstream.sentences import (
    FALLBACK_PREFIX,
    EmptyKeywordsError,
    SentenceTable,
    TableConflictError,
    TableFormatError,
    TableGenerator,
    bundled_table,
    canonical_key,
    generate,
    load_sentence_table,
    parse_sentence_table,
)

# Keyword sets paired with the exact sentences the healthcare table must
# produce. Multi-keyword rows are checked under every permutation.
EXPECTED_ROWS = [
    (("allergy",), "I have an allergic reaction."),
    (("emergency",), "It is a medical emergency."),
    (("allergy", "pain"), "I have an allergic reaction, it is painful"),
    (("pain", "allergy"), "I have an allergic reaction, it is painful"),
    (("medicine", "pain"), "I am in pain, what medicine should I use?"),
    (("emergency", "allergy"), "I have an allergic reaction, it is an emergency"),
    (("cough",), "I have a cough"),
    (("hospital", "cold"), "I have a cold, should I rush to the hospital"),
    (("sick", "accident"), "I had an accident, I am feeling sick"),
]


def test_canonical_key_lowercases_dedupes_sorts():
    assert canonical_key(["Pain", "allergy"]) == "allergy|pain"
    assert canonical_key(["pain", "pain", "PAIN"]) == "pain"
    assert canonical_key([" blood "]) == "blood"
    assert canonical_key(["b", "a", "c"]) == "a|b|c"


def test_canonical_key_rejects_bad_input():
    with pytest.raises(EmptyKeywordsError):
        canonical_key([])
    with pytest.raises(ValueError):
        canonical_key(["ok", "  "])
    with pytest.raises(ValueError):
        canonical_key(["a|b"])


def test_canonical_key_is_permutation_invariant():
    words = ["blood", "pain", "hospital"]
    keys = {canonical_key(p) for p in itertools.permutations(words)}
    assert keys == {"blood|hospital|pain"}


def test_bundled_table_rows_are_byte_exact():
    table = bundled_table()
    for keywords, sentence in EXPECTED_ROWS:
        got = generate(table, keywords)
        assert got.matched, keywords
        assert got.text == sentence, keywords


def test_bundled_table_order_invariance_over_all_permutations():
    table = bundled_table()
    for keywords, sentence in EXPECTED_ROWS:
        if len(keywords) < 2:
            continue
        for perm in itertools.permutations(keywords):
            got = generate(table, perm)
            assert got.matched and got.text == sentence, perm


def test_bundled_table_covers_signing_vocabulary(vocab):
    table = bundled_table()
    for label in vocab.signing_labels:
        got = generate(table, [label])
        assert got.matched, f"no single-keyword sentence for {label!r}"


def test_generate_is_total_on_arbitrary_keywords():
    table = bundled_table()
    got = generate(table, ["zebra", "qu换sar"])
    assert not got.matched
    assert got.text == FALLBACK_PREFIX + "zebra, qu换sar"


def test_fallback_lists_keywords_in_detection_order():
    table = SentenceTable()
    got = generate(table, ["pain", "blood"])
    assert got.text == FALLBACK_PREFIX + "pain, blood"
    other = generate(table, ["blood", "pain"])
    assert other.text == FALLBACK_PREFIX + "blood, pain"
    assert not got.matched and not other.matched


def test_generate_rejects_empty_sequence():
    with pytest.raises(EmptyKeywordsError):
        generate(SentenceTable(), [])


def test_table_generator_defaults_to_bundled():
    gen = TableGenerator()
    assert gen.generate(["allergy"]).text == "I have an allergic reaction."


def test_parse_accepts_both_arrows_and_comments():
    table = parse_sentence_table(
        "# comment\n"
        "blood -> I am bleeding.\n"
        "\n"
        "pain, blood → It hurts and bleeds.\n"
    )
    assert generate(table, ["blood"]).text == "I am bleeding."
    assert generate(table, ["blood", "pain"]).text == "It hurts and bleeds."


def test_parse_duplicate_consistent_rows_collapse():
    table = parse_sentence_table(
        "a, b -> same sentence\n"
        "b, a -> same sentence\n"
    )
    assert len(table) == 1


def test_parse_conflicting_rows_raise_with_both_lines():
    text = "a, b -> one sentence\nb, a -> another sentence\n"
    with pytest.raises(TableConflictError) as e:
        parse_sentence_table(text, source="table.txt")
    msg = str(e.value)
    assert "table.txt:2" in msg and "line 1" in msg


def test_parse_format_errors_carry_source_and_lineno():
    with pytest.raises(TableFormatError) as e:
        parse_sentence_table("just words, no arrow\n", source="t.txt")
    assert str(e.value).startswith("t.txt:1")
    with pytest.raises(TableFormatError):
        parse_sentence_table("a ->   \n")
    with pytest.raises(TableFormatError):
        parse_sentence_table(", -> sentence\n")


def test_load_sentence_table_from_file(tmp_path):
    p = tmp_path / "custom.txt"
    p.write_text("blood -> Blood detected.\n", encoding="utf-8")
    table = load_sentence_table(p)
    assert generate(table, ["Blood"]).text == "Blood detected."


def test_load_error_names_the_file(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("no arrow here\n", encoding="utf-8")
    with pytest.raises(TableFormatError) as e:
        load_sentence_table(p)
    assert "bad.txt:1" in str(e.value)


def test_table_keywords_property():
    table = parse_sentence_table("a, b -> x\nc -> y\n")
    assert table.keywords == {"a", "b", "c"}
