import json

import pytest

from utils.axiom_suite import random_pairing
from utils.coefficients import INTEGER, RATIONAL, RingMismatchError
from utils.cut_coalgebra import LengthCapError
from utils.inscription_coalgebra import (
    Inscription, Pairing, antipode_mu, delta_mu, inscriptions, parse_pairing, rho_mu, theta_mu,
)
from utils.words import EMPTY_WORD, Element, Phrase, UNIT_PHRASE, Word, iter_words

from helpers import phrase_terms, terms


def test_rho_of_abacba(delta_pairing):
    expected = terms({'B ⊗ CBA': 1, 'CB ⊗ AB': 1, 'BACB ⊗ ~': 1, 'AC ⊗ AA': 1})
    assert rho_mu(Word('ABACBA'), delta_pairing) == expected


def test_rho_uses_pairing_weights():
    pairing = Pairing({('A', 'B'): 3, ('B', 'A'): -1})
    expected = terms({'~ ⊗ ~': 3})
    assert rho_mu(Word('AB'), pairing) == expected
    assert rho_mu(Word('BA'), pairing) == terms({'~ ⊗ ~': -1})
    assert rho_mu(EMPTY_WORD, pairing).is_zero()


def test_inscriptions_enumerate_even_subsets():
    found = inscriptions(Word('ABCD'))
    assert found[0] == Inscription(())
    assert len(found) == 1 + 6 + 1
    assert found[-1].pairs == [(1, 2), (3, 4)]
    with pytest.raises(LengthCapError):
        inscriptions(Word('ABCD'), max_length=3)


def test_coproduct_of_aa(delta_pairing):
    expected = phrase_terms({'AA ⊗ 1': 1, '1 ⊗ AA': 1, '(~) ⊗ (~)': 1})
    assert delta_mu(Phrase([Word('AA')]), delta_pairing) == expected


def test_coproduct_of_the_empty_word(delta_pairing):
    expected = phrase_terms({'(~) ⊗ 1': 1, '1 ⊗ (~)': 1})
    assert delta_mu(Phrase([EMPTY_WORD]), delta_pairing) == expected


def test_coproduct_with_two_inscribed_pairs(delta_pairing):
    image = delta_mu(Phrase([Word('AABB')]), delta_pairing)
    assert image[(Phrase([EMPTY_WORD, EMPTY_WORD]), Phrase([EMPTY_WORD]))] == 1
    assert image[(Phrase([EMPTY_WORD]), Phrase([Word('BB')]))] == 1
    assert image[(Phrase([EMPTY_WORD]), Phrase([Word('AA')]))] == 1


def test_coaction(delta_pairing):
    expected = terms({'1 ⊗ AA': 1, '(~) ⊗ ~': 1}, kinds=('phrase', 'word'))
    assert theta_mu(Word('AA'), delta_pairing) == expected


def test_antipode_of_aa(delta_pairing):
    expected = Element({Phrase([Word('AA')]): -1, Phrase([EMPTY_WORD, EMPTY_WORD]): 1})
    assert antipode_mu(Phrase([Word('AA')]), delta_pairing) == expected


def test_ring_mismatch(delta_pairing):
    with pytest.raises(RingMismatchError):
        rho_mu(Element({Word('AA'): 1}, RATIONAL), delta_pairing)


def test_pairing_support():
    assert Pairing.delta('AB').support() == [('A', 'A'), ('B', 'B')]
    with pytest.raises(ValueError):
        Pairing.delta().support()


def test_pairing_sum_and_pullback():
    mu = Pairing({('X', 'X'): 2})
    assert (mu + mu)('X', 'X') == 4
    pulled = mu.pullback({'A': 'X', 'B': 'X'})
    assert pulled('A', 'B') == 2
    assert pulled('B', 'B') == 2


@pytest.mark.parametrize('seed', range(5))
def test_rho_is_additive_in_the_pairing(seed):
    first = random_pairing('AB', seed)
    second = random_pairing('AB', seed + 100) + Pairing.delta()
    total = first + second
    for w in iter_words('AB', 6):
        assert rho_mu(w, total) == rho_mu(w, first) + rho_mu(w, second)


def test_parse_pairing_from_file(tmp_path):
    path = tmp_path / 'mu.json'
    path.write_text(json.dumps([{'a': 'A', 'b': 'B', 'coeff': '2'}]))
    pairing = parse_pairing(str(path))
    assert pairing('A', 'B') == 2
    assert pairing('B', 'A') == 0
    assert parse_pairing('delta', INTEGER, 'AB') == Pairing.delta('AB')


@pytest.mark.parametrize('rows', [[{'a': 'A'}], [7]])
def test_malformed_pairing_entries(rows):
    with pytest.raises(ValueError):
        Pairing.from_json(rows)


def test_missing_pairing_file():
    with pytest.raises(ValueError):
        parse_pairing('/nonexistent/mu.json')
