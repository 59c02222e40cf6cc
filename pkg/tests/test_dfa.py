import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import dfa_and_words, dfas
from synclab import (
    Dfa,
    DfaFormatError,
    apply_word,
    apply_word_set,
    cerny_family,
    format_word,
    is_strongly_connected,
    parse_dfa,
    parse_word,
    serialize_dfa,
    sporadic_examples,
)


def test_parse_smallest():
    assert parse_dfa("dfa 1 1\n0") == Dfa(1, 1, ((0,),))


def test_parse_cerny_roundtrip(c3):
    text = serialize_dfa(c3)
    assert text == "dfa 3 2\n1 1\n2 1\n0 2\n"
    d = parse_dfa(text)
    assert d.n == 3 and d.k == 2
    assert [d.delta[q][0] for q in range(3)] == [1, 2, 0]
    assert [d.delta[q][1] for q in range(3)] == [1, 1, 2]


def test_parse_comments_and_blank_lines():
    d = parse_dfa("# header comment\ndfa 2 1\n\n# row comment\n1\n0\n")
    assert d.delta == ((1,), (0,))


@pytest.mark.parametrize(
    "text, line",
    [
        ("dfa 2 1\n5", 2),
        ("dfa 2\n0\n0\n", 1),
        ("fsm 2 1\n0\n0\n", 1),
        ("dfa 2 2\n0 1\n0\n", 3),
        ("dfa 2 1\n0\n0\n1\n", 4),
        ("dfa 2 1\nx\n0\n", 2),
        ("# only comment\n", 1),
    ],
)
def test_parse_errors_report_line(text, line):
    with pytest.raises(DfaFormatError) as err:
        parse_dfa(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


def test_parse_wrong_row_count():
    with pytest.raises(DfaFormatError, match="expected 3 rows"):
        parse_dfa("dfa 3 1\n0\n1\n")


def test_dfa_rejects_out_of_range():
    with pytest.raises(ValueError):
        Dfa(2, 1, ((0,), (2,)))
    with pytest.raises(ValueError):
        Dfa(0, 1, ())


def test_apply_word_examples(c3):
    assert apply_word(c3, 0, ()) == 0
    assert apply_word(c3, 2, (0,)) == 0
    assert apply_word(c3, 0, (0, 1)) == 1


def test_apply_word_set_examples(c3):
    assert apply_word_set(c3, {0, 1, 2}, ()) == {0, 1, 2}
    assert apply_word_set(c3, {0, 1}, (1,)) == {1}
    # baab is the oracle witness for C_3
    assert apply_word_set(c3, range(3), parse_word("baab")) == {1}


def test_strong_connectivity():
    assert all(is_strongly_connected(cerny_family(n)) for n in range(2, 12))
    assert not is_strongly_connected(Dfa(2, 1, ((0,), (0,))))
    assert is_strongly_connected(Dfa(2, 2, ((1, 0), (0, 1))))


def test_cerny_family():
    assert cerny_family(2).delta == ((1, 1), (0, 1))
    with pytest.raises(ValueError):
        cerny_family(1)


def test_sporadic_examples_are_well_formed():
    examples = {e.name: e for e in sporadic_examples()}
    assert {"cerny_3", "cerny_4", "cpr_4", "roman_5", "kari_6"} <= set(examples)
    assert examples["cerny_3"].dfa == cerny_family(3)
    assert (examples["roman_5"].dfa.n, examples["roman_5"].dfa.k) == (5, 3)
    assert (examples["kari_6"].dfa.n, examples["kari_6"].dfa.k) == (6, 2)
    for e in examples.values():
        assert is_strongly_connected(e.dfa)
        assert e.expected_length == (e.dfa.n - 1) ** 2


def test_word_formats():
    assert format_word((0, 1, 0), 2) == "aba"
    assert format_word((), 2) == ""
    assert format_word((0, 27), 30) == "w:0,27"
    assert parse_word("w:0,27", 30) == (0, 27)
    assert parse_word("w:") == ()
    with pytest.raises(ValueError):
        parse_word("abc", 2)


@given(dfas())
def test_serialize_parse_roundtrip(dfa):
    assert parse_dfa(serialize_dfa(dfa)) == dfa


@given(dfa_and_words())
def test_action_composition(case):
    dfa, (u, v) = case
    for q in range(dfa.n):
        assert apply_word(dfa, q, u + v) == apply_word(dfa, apply_word(dfa, q, u), v)


@given(dfa_and_words(count=1), st.data())
def test_image_never_grows(case, data):
    dfa, (w,) = case
    states = data.draw(st.sets(st.integers(0, dfa.n - 1)))
    assert len(apply_word_set(dfa, states, w)) <= len(states)
