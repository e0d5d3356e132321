"""Word parsing"""

import pytest

from core.errors import WordSyntaxError
from core.words import Token, Word, parse_word


def test_parse_conjugate_of_a():
    word = parse_word("t a t^-1")
    assert word.tokens == (Token("t", None, 1), Token("a", 0, 1), Token("t", None, -1))


def test_parse_indexed_powers():
    word = parse_word("a_3^-2 c_1^5")
    assert word.tokens == (Token("a", 3, -2), Token("c", 1, 5))


def test_parse_separators_and_identity():
    assert parse_word("a_1*a_2").tokens == (Token("a", 1, 1), Token("a", 2, 1))
    assert parse_word("t · t").tokens == (Token("t", None, 1), Token("t", None, 1))
    assert parse_word("1") == Word()


@pytest.mark.parametrize("text, position", [
    ("t^0", 2),
    ("x", 0),
    ("t_1", 0),
    ("c", 0),
    ("a_1b", 3),
    ("", 0),
])
def test_parse_errors_report_position(text, position):
    with pytest.raises(WordSyntaxError) as info:
        parse_word(text)
    assert info.value.position == position


def test_render_round_trips():
    for text in ["t a_0 t^-1", "a_-2^3 c_4^-1 t^2", "1"]:
        assert parse_word(parse_word(text).render()) == parse_word(text)


def test_word_inverse_and_length():
    word = parse_word("t^2 a_1^-3")
    assert word.inverse().render() == "a_1^3 t^-2"
    assert len(word) == 5
