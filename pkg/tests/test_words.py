import json

import pytest
from hypothesis import given, strategies as st

from utils.coefficients import INTEGER, modular
from utils.words import (
    EMPTY_WORD, Element, ParseError, Phrase, UNIT_PHRASE, Word, concat_words, map_letters,
    needs_separator, parse_phrase, parse_word, phrase_product, tensor2,
)

from helpers import phrase_terms

words = st.lists(st.sampled_from('ABC'), max_size=4).map(Word)
elements = st.dictionaries(words, st.integers(-5, 5), max_size=5).map(lambda d: Element(d))


def test_factor_is_one_based():
    w = Word('ABCD')
    assert w.factor(2, 4) == Word('BC')
    assert w.factor(1, 5) == w
    assert w.factor(3, 3) == EMPTY_WORD
    with pytest.raises(ValueError):
        w.factor(0, 2)
    with pytest.raises(ValueError):
        w.factor(2, 6)


def test_concat_and_phrase_product():
    assert concat_words(Word('AB'), Word('C')) == Word('ABC')
    assert concat_words(EMPTY_WORD, Word('A')) == Word('A')
    p = Phrase([Word('A'), Word('B')])
    assert phrase_product(p, Phrase([Word('C')])) == Phrase([Word('A'), Word('B'), Word('C')])
    assert phrase_product(UNIT_PHRASE, p) == p


def test_map_letters():
    alpha = {'A': 'X', 'B': 'X', 'C': 'Y'}
    assert map_letters(alpha, Word('ABC')) == Word('XXY')
    assert map_letters(alpha, Phrase([Word('A'), Word('C')])) == Phrase([Word('X'), Word('Y')])
    merged = map_letters(alpha, Element({Word('A'): 1, Word('B'): 2}))
    assert merged == Element({Word('X'): 3})
    with pytest.raises(ValueError):
        map_letters(alpha, Word('AD'))


def test_parse_word_forms():
    assert parse_word('ABA') == Word('ABA')
    assert parse_word('~') == EMPTY_WORD
    assert parse_word('foo,bar', letters=['foo', 'bar']) == Word(('foo', 'bar'))
    assert parse_word('foobar', letters=['foo', 'bar']) == Word(('foo', 'bar'))


def test_parse_phrase_forms():
    assert parse_phrase('1') == UNIT_PHRASE
    assert parse_phrase('(AB|~|C)') == Phrase([Word('AB'), EMPTY_WORD, Word('C')])
    assert parse_phrase('AB') == Phrase([Word('AB')])


@pytest.mark.parametrize('text, position', [
    ('(A|B', 5),
    ('(A(B))', 3),
    ('A|B', 1),
    ('', 1),
])
def test_phrase_parse_errors_report_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse_phrase(text)
    assert info.value.position == position


def test_word_parse_errors():
    with pytest.raises(ParseError) as info:
        parse_word('AB C')
    assert info.value.position == 3
    with pytest.raises(ParseError):
        parse_word('foox', letters=['foo'])


def test_render_canonical_order():
    element = phrase_terms({'AB ⊗ 1': 1, '1 ⊗ AB': 1, 'A ⊗ B': 1, 'B ⊗ A': 1})
    assert element.render() == '1 ⊗ (AB) + (A) ⊗ (B) + (B) ⊗ (A) + (AB) ⊗ 1'


def test_render_coefficients():
    element = Element({Word('A'): 2, Word('AB'): -1, EMPTY_WORD: 3})
    assert element.render() == '3 · ~ + 2 · A + -AB'
    assert Element.zero().render() == '0'
    assert Element({Word('A'): -1}, modular(3)).render() == '2 · A'


def test_render_separated_round_trips_overlapping_letters():
    letters = ['A', 'B', 'AB']
    element = Element({Word(('A', 'B')): 1, Word(('AB',)): 2})
    assert element.render(separated=True) == '2 · AB + A,B'
    assert parse_word('A,B', letters) == Word(('A', 'B'))
    assert parse_word('AB', letters) == Word(('AB',))
    assert needs_separator(letters)
    assert not needs_separator(['A', 'B'])
    assert not needs_separator(None)
    rows = element.to_json(separated=True)
    assert Element.from_json(rows, ('word',), letters=letters) == element


def test_json_round_trip_and_schema():
    element = phrase_terms({'AB ⊗ 1': 1, 'A ⊗ B': -2, '(A|B) ⊗ C': 3})
    rows = element.to_json()
    assert rows[0] == {'left': '(A)', 'right': '(B)', 'coeff': '-2'}
    rebuilt = Element.from_json(json.loads(element.dumps()), ('phrase', 'phrase'))
    assert rebuilt == element


def test_zero_coefficients_are_never_stored():
    element = Element({Word('A'): 2})
    element.add_term(Word('A'), -2)
    assert element.is_zero()
    assert Element({Word('A'): 5}, modular(5)).is_zero()


def test_tensor_of_elements():
    a = Element({Word('A'): 2})
    b = Element({Word('B'): 3, Word('C'): 1})
    assert tensor2(a, b) == Element({(Word('A'), Word('B')): 6, (Word('A'), Word('C')): 2}, arity=2)


@given(elements, elements)
def test_addition_inverts(a, b):
    assert (a + b) - b == a
    assert a + b == b + a


@given(elements, st.integers(-4, 4), st.integers(-4, 4))
def test_scaling_distributes(a, c, d):
    assert a.scale(c + d) == a.scale(c) + a.scale(d)
    assert a.scale(0).is_zero()


@given(elements)
def test_linear_maps_extend(a):
    doubled = a.apply(lambda w: Element({w + w: 1}))
    assert doubled == Element({w + w: c for w, c in a.items()})
