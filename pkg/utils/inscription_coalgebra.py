import functools
import itertools
import json
import logging
import os
from typing import NamedTuple

from utils.bialgebra import PhraseBialgebra
from utils.coefficients import INTEGER, RingMismatchError
from utils.cut_coalgebra import LengthCapError
from utils.words import Element, Phrase, Word, as_element

logger = logging.getLogger(__name__)

MAX_INSCRIPTION_LENGTH = int(os.environ.get('PHRASEHOPF_MAX_INSCRIPTION_LENGTH', '12'))


class Pairing:
    """
    A map μ: Letter × Letter → R with finite support.

    ``diagonal`` adds the same value to every μ(A, A); it is the only
    part that is not finitely supported and is used for the Delta
    pairing when no alphabet is declared.
    """

    def __init__(self, table=None, ring=INTEGER, diagonal=0, name=None):
        self.ring = ring
        self.diagonal = ring.normalize(diagonal)
        self.table = {}
        for (a, b), value in (table or {}).items():
            value = ring.normalize(value)
            if value != 0:
                self.table[(a, b)] = value
        self.name = name

    @classmethod
    def delta(cls, alphabet=None, ring=INTEGER):
        """μ(A, B) = 1 iff A = B; finitely supported when an alphabet is given."""
        if alphabet is None:
            return cls(ring=ring, diagonal=1, name='delta')
        return cls({(a, a): 1 for a in alphabet}, ring, name='delta')

    def __call__(self, a, b):
        value = self.table.get((a, b), self.ring.zero)
        if self.diagonal and a == b:
            value = self.ring.add(value, self.diagonal)
        return value

    @property
    def key(self):
        return (self.ring, self.diagonal, frozenset(self.table.items()))

    def __eq__(self, other):
        return isinstance(other, Pairing) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def support(self):
        """
        Letter pairs with non-zero value, sorted.

        Raises:
            ValueError: if the pairing has an unbounded diagonal part
        """
        if self.diagonal:
            raise ValueError("Pairing has unbounded support; declare an alphabet for the delta pairing")
        return sorted(self.table)

    def __add__(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(f"Ring mode mismatch: {self.ring.label} vs {other.ring.label}")
        table = dict(self.table)
        for pair, value in other.table.items():
            table[pair] = self.ring.add(table.get(pair, self.ring.zero), value)
        return Pairing(table, self.ring, self.ring.add(self.diagonal, other.diagonal))

    def pullback(self, alpha):
        """μ∘(α×α) on the letters of ``alpha``."""
        letters = sorted(alpha)
        table = {(a, b): self(alpha[a], alpha[b]) for a in letters for b in letters}
        return Pairing(table, self.ring)

    @property
    def descriptor(self):
        if self.name:
            return self.name
        entries = ','.join(f"{a}{b}={self.ring.render(v)}" for (a, b), v in sorted(self.table.items()))
        if self.diagonal:
            entries = f"diag={self.ring.render(self.diagonal)};" + entries
        return f"table:{entries}"

    def to_json(self):
        return [{'a': a, 'b': b, 'coeff': self.ring.render(v)} for (a, b), v in sorted(self.table.items())]

    @classmethod
    def from_json(cls, rows, ring=INTEGER):
        """Build a pairing from a JSON array of {a, b, coeff}."""
        table = {}
        for row in rows:
            try:
                pair = (row['a'], row['b'])
                table[pair] = ring.add(table.get(pair, ring.zero), ring.parse(str(row['coeff'])))
            except (KeyError, TypeError) as e:
                raise ValueError(f"Malformed pairing entry {row!r}: {str(e)}")
        return cls(table, ring)

    def __repr__(self):
        return f"Pairing({self.descriptor})"


def parse_pairing(text, ring=INTEGER, alphabet=None):
    """
    Parse ``delta``, a path to a JSON file of pairing entries, or already decoded entries.

    Raises:
        ValueError: if the file cannot be read or decoded
    """
    if isinstance(text, Pairing):
        return text
    if isinstance(text, list):
        return Pairing.from_json(text, ring)
    if text == 'delta':
        return Pairing.delta(alphabet, ring)
    try:
        with open(text, 'r', encoding='utf-8') as f:
            rows = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ValueError(f"Failed to load pairing '{text}': {str(e)}")
    return Pairing.from_json(rows, ring)


class SimpleInscription(NamedTuple):
    i: int
    j: int


class Inscription(NamedTuple):
    """Strictly increasing 1-based positions, paired consecutively."""
    indices: tuple

    @property
    def pairs(self):
        it = iter(self.indices)
        return list(zip(it, it))

    @property
    def k(self):
        return len(self.indices) // 2


def _check_length(word, max_length):
    limit = MAX_INSCRIPTION_LENGTH if max_length is None else max_length
    if len(word) > limit:
        raise LengthCapError(f"Word of length {len(word)} exceeds the inscription enumeration cap {limit}")


def inscriptions(word, max_length=None):
    """
    All even-size position subsets of a word, the empty one first.

    Raises:
        LengthCapError: if the word is longer than the cap
    """
    word = Word(word)
    _check_length(word, max_length)
    m = len(word)
    found = []
    for size in range(0, m + 1, 2):
        for chosen in itertools.combinations(range(1, m + 1), size):
            found.append(Inscription(chosen))
    return found


def _weighted_pairs(word, pairing):
    """
    Non-empty inscriptions with non-zero weight as 0-based position pairs.

    Zero-weight pairs are pruned while the pairs are chosen.
    """
    m = len(word)
    ring = pairing.ring

    def extend(start):
        for i in range(start, m):
            for j in range(i + 1, m):
                weight = pairing(word[i], word[j])
                if weight == 0:
                    continue
                yield ((i, j),), weight
                for rest, rest_weight in extend(j + 1):
                    total = ring.mul(weight, rest_weight)
                    if total != 0:
                        yield ((i, j),) + rest, total

    return extend(0)


def _split(word, pairs):
    """Between-letters phrase l_α and the word with every [i_u, j_u] deleted."""
    left = Phrase(Word(word[i + 1:j]) for i, j in pairs)
    right = []
    previous = 0
    for i, j in pairs:
        right.extend(word[previous:i])
        previous = j + 1
    right.extend(word[previous:])
    right = Word(right)
    assert left.letter_count + len(right) + 2 * len(pairs) == len(word)
    return left, right


def _rho_word(word, pairing):
    word = Word(word)
    result = Element.zero(pairing.ring, 2)
    m = len(word)
    for i in range(m):
        for j in range(i + 1, m):
            weight = pairing(word[i], word[j])
            if weight != 0:
                result.add_term((Word(word[i + 1:j]), Word(word[:i] + word[j + 1:])), weight)
    return result


def rho_mu(v, pairing):
    """
    Pre-Lie comultiplication ρ(w) = Σ μ(w(i), w(j)) w_{i+1,j} ⊗ w_{1,i} w_{j+1,m+1}.

    Args:
        v (Word | Element): element of W, the empty word allowed
        pairing (Pairing): the pairing μ

    Returns:
        Element: Word⊗Word element
    """
    element = as_element(v, pairing.ring)
    if element.ring != pairing.ring:
        raise RingMismatchError(f"Ring mode mismatch: {element.ring.label} vs {pairing.ring.label}")
    return element.apply(lambda w: _rho_word(w, pairing), arity=2)


class InscriptionBialgebra(PhraseBialgebra):
    """All phrases (empty words allowed) with the inscription comultiplication Δ_μ."""
    name = 'inscription'

    def __init__(self, pairing, max_length=None, cache_size=None):
        super().__init__(pairing.ring, cache_size)
        self.pairing = pairing
        self.max_length = MAX_INSCRIPTION_LENGTH if max_length is None else max_length

    @property
    def descriptor(self):
        return f"mu={self.pairing.descriptor}"

    def check_word(self, word):
        _check_length(word, self.max_length)

    def word_terms(self, word):
        for pairs, weight in _weighted_pairs(word, self.pairing):
            left, right = _split(word, pairs)
            yield left, right, weight

    def simple_terms(self, word):
        return _rho_word(word, self.pairing)


@functools.lru_cache(maxsize=64)
def inscription_bialgebra(pairing, max_length=None):
    return InscriptionBialgebra(pairing, max_length)


def _check_ring(x, pairing):
    if isinstance(x, Element) and x.ring != pairing.ring:
        raise RingMismatchError(f"Ring mode mismatch: {x.ring.label} vs {pairing.ring.label}")


def delta_mu(q, pairing, max_length=None):
    """
    Inscription comultiplication Δ(w) = w⊗1 + Σ_α μ(w, α) l_α(w) ⊗ r_α(w), multiplicative on Q.

    Raises:
        LengthCapError: if a word exceeds the inscription cap
    """
    _check_ring(q, pairing)
    return inscription_bialgebra(pairing, max_length).coproduct(q)


def theta_mu(w, pairing, max_length=None):
    """Coaction W → Q⊗W."""
    _check_ring(w, pairing)
    return inscription_bialgebra(pairing, max_length).theta(w)


def antipode_mu(q, pairing, max_length=None):
    _check_ring(q, pairing)
    return inscription_bialgebra(pairing, max_length).antipode(q)
