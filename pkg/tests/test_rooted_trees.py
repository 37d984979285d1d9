import itertools

import pytest

from utils.axiom_suite import check_tree_oracle, unlaced_words
from utils.inscription_coalgebra import Pairing, inscription_bialgebra
from utils.rooted_trees import (
    Forest, POINT, PlanarTree, ck_coproduct, ck_tree, encode_forests, forest_to_phrase, forests, is_unlaced,
    parse_tree, phrase_to_forest, planar_trees, tree_to_word, unlaced_violation, word_to_tree,
)
from utils.words import EMPTY_WORD, ParseError, Phrase, Word, iter_words

from helpers import phrase_terms

CATALAN = [1, 1, 2, 5, 14, 42, 132]


def leaf(letter):
    return (letter, POINT)


def test_boundary_word_examples():
    assert tree_to_word(parse_tree('A(B,C)')) == Word('ABBCCA')
    assert tree_to_word(parse_tree('A,B')) == Word('AABB')
    assert tree_to_word(parse_tree('A(B(C))')) == Word('ABCCBA')
    assert tree_to_word(parse_tree('A')) == Word('AA')
    assert tree_to_word(POINT) == EMPTY_WORD


def test_parse_tree_structure():
    tree = parse_tree('A(B,C)')
    assert tree == PlanarTree((('A', PlanarTree((leaf('B'), leaf('C')))),))
    assert parse_tree('.') == POINT
    assert tree.render() == 'A(B,C)'


@pytest.mark.parametrize('text, position', [('A(B', 4), ('A(,B)', 3), ('A)', 2)])
def test_parse_tree_errors(text, position):
    with pytest.raises(ParseError) as info:
        parse_tree(text)
    assert info.value.position == position


def test_repeated_decorations_are_rejected():
    with pytest.raises(ValueError):
        parse_tree('A(A)')


def test_word_to_tree():
    assert word_to_tree(Word('ABBCCA')).render() == 'A(B,C)'
    assert word_to_tree(Word('AABB')).render() == 'A,B'
    assert word_to_tree(EMPTY_WORD) == POINT


@pytest.mark.parametrize('word, position', [('ABAB', 3), ('AAA', 3), ('AB', 1), ('ABBAC', 5)])
def test_unlaced_violations(word, position):
    violation = unlaced_violation(Word(word))
    assert violation is not None
    assert violation[0] == position
    with pytest.raises(ValueError):
        word_to_tree(Word(word))


def _brute_force_unlaced(word):
    letters = set(word)
    if any(word.count(x) != 2 for x in letters):
        return False
    for a, b in itertools.permutations(letters, 2):
        a1, a2 = [k for k, x in enumerate(word) if x == a]
        b1, b2 = [k for k, x in enumerate(word) if x == b]
        if a1 < b1 < a2 < b2:
            return False
    return True


def test_unlaced_matches_the_definition():
    for w in iter_words('ABC', 6):
        assert is_unlaced(w) == _brute_force_unlaced(w)


def test_unlaced_words_round_trip():
    for w in iter_words('ABCD', 8):
        if is_unlaced(w):
            assert tree_to_word(word_to_tree(w)) == w


@pytest.mark.parametrize('edges', range(7))
def test_tree_counts_and_round_trip(edges):
    trees = list(planar_trees(edges))
    assert len(trees) == CATALAN[edges]
    for tree in trees:
        word = tree_to_word(tree)
        assert len(word) == 2 * edges
        assert word_to_tree(word) == tree


def test_decorated_trees_round_trip():
    for edges in range(5):
        for tree in planar_trees(edges, 'ABCD'):
            assert word_to_tree(tree_to_word(tree)) == tree
    assert len(unlaced_words(3, 'ABC')) == 1 + 3 + 2 * 6 + 5 * 6


def test_forest_phrase_encoding():
    forest = Forest((parse_tree('A'), POINT))
    phrase = forest_to_phrase(forest)
    assert phrase == Phrase([Word('AA'), EMPTY_WORD])
    assert phrase_to_forest(phrase) == forest


def test_admissible_cut_coproduct_of_one_edge():
    image = encode_forests(ck_tree(parse_tree('A')))
    assert image == phrase_terms({'AA ⊗ 1': 1, '(~) ⊗ (~)': 1, '1 ⊗ AA': 1})


def test_admissible_cut_coproduct_of_a_chain():
    image = encode_forests(ck_coproduct(parse_tree('A(B)')))
    expected = phrase_terms({'ABBA ⊗ 1': 1, '1 ⊗ ABBA': 1, 'BB ⊗ (~)': 1, '(~) ⊗ AA': 1})
    assert image == expected


def test_admissible_cut_coproduct_of_a_cherry():
    image = encode_forests(ck_coproduct(parse_tree('A,B')))
    expected = phrase_terms({
        'AABB ⊗ 1': 1, '1 ⊗ AABB': 1, '(~) ⊗ BB': 1, '(~) ⊗ AA': 1, '(~|~) ⊗ (~)': 1,
    })
    assert image == expected


@pytest.mark.slow
def test_inscription_coproduct_matches_admissible_cuts(delta_pairing):
    bialgebra = inscription_bialgebra(delta_pairing)
    report = check_tree_oracle(bialgebra.coproduct, forests(5, 3))
    assert report.passed, report.counterexample


def test_oracle_detects_a_corrupted_coproduct():
    bialgebra = inscription_bialgebra(Pairing.delta())
    broken_at = Phrase([Word('ABBA')])

    def corrupted(phrase):
        image = bialgebra.coproduct(phrase)
        if phrase == broken_at:
            return image.project(lambda key: key != (Phrase([Word('BB')]), Phrase([EMPTY_WORD])))
        return image

    report = check_tree_oracle(corrupted, forests(2, 1))
    assert not report.passed
    assert report.counterexample['input'] == '[A(B)]'
