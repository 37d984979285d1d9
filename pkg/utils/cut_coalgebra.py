import functools
import itertools
import logging
import os
from typing import NamedTuple

from utils.bialgebra import PhraseBialgebra
from utils.coefficients import INTEGER
from utils.words import Element, Phrase, Word, as_element

logger = logging.getLogger(__name__)

MAX_CUT_LENGTH = int(os.environ.get('PHRASEHOPF_MAX_CUT_LENGTH', '14'))
MAX_SUBWORD_LENGTH = int(os.environ.get('PHRASEHOPF_MAX_INSCRIPTION_LENGTH', '12'))


class LengthCapError(ValueError):
    """Word longer than the configured enumeration cap."""


class SimpleCut(NamedTuple):
    """1-based index pair (i, j) with w_{i,j} in L and (i, j) != (1, m+1)."""
    i: int
    j: int


class Cut(NamedTuple):
    """Strictly increasing 1-based indices (i_1, j_1, ..., i_k, j_k); k = 0 is the empty cut."""
    indices: tuple

    @property
    def pairs(self):
        it = iter(self.indices)
        return list(zip(it, it))

    @property
    def k(self):
        return len(self.indices) // 2


def _check_length(word, max_length):
    limit = MAX_CUT_LENGTH if max_length is None else max_length
    if len(word) > limit:
        raise LengthCapError(f"Word of length {len(word)} exceeds the cut enumeration cap {limit}")


def _require_nonempty(word):
    if len(word) == 0:
        raise ValueError("Cut constructions are defined on non-empty words only")


def _interval_table(word, stable):
    """Membership of every factor word[i:j] in L, 0-based half-open."""
    m = len(word)
    return {(i, j): stable.contains(Word(word[i:j])) for i in range(m) for j in range(i + 1, m + 1)}


def _cut_pairs(word, stable):
    """
    All non-empty families of separated L-factors as 0-based (i, j) pairs.

    Families are built left to right by backtracking; the single factor
    covering the whole word is excluded.
    """
    m = len(word)
    members = _interval_table(word, stable)

    @functools.lru_cache(maxsize=None)
    def tails(start):
        found = []
        for i in range(start, m):
            for j in range(i + 1, m + 1):
                if not members[(i, j)]:
                    continue
                found.append(((i, j),))
                # consecutive factors are separated by at least one letter
                for rest in tails(j + 1):
                    found.append(((i, j),) + rest)
        return tuple(found)

    return [pairs for pairs in tails(0) if pairs != ((0, m),)]


def _split(word, pairs):
    """Extracted phrase l_c and deletion word r_c for 0-based pairs."""
    left = Phrase(Word(word[i:j]) for i, j in pairs)
    right = []
    previous = 0
    for i, j in pairs:
        right.extend(word[previous:i])
        previous = j
    right.extend(word[previous:])
    return left, Word(right)


def simple_cuts(word, stable):
    """
    Simple cuts (i, j) of a non-empty word, lexicographic order.

    Raises:
        ValueError: for the empty word
    """
    word = Word(word)
    _require_nonempty(word)
    m = len(word)
    found = []
    for i in range(m):
        for j in range(i + 1, m + 1):
            if (i, j) != (0, m) and stable.contains(Word(word[i:j])):
                found.append(SimpleCut(i + 1, j + 1))
    return found


def cuts(word, stable, max_length=None):
    """
    All cuts of a non-empty word including the empty one, ordered by k then indices.

    Raises:
        LengthCapError: if the word is longer than the cap
    """
    word = Word(word)
    _require_nonempty(word)
    _check_length(word, max_length)
    found = [Cut(tuple(x + 1 for pair in pairs for x in pair)) for pairs in _cut_pairs(word, stable)]
    found.sort(key=lambda c: (c.k, c.indices))
    return [Cut(())] + found


def _rho_word(word, stable, ring):
    word = Word(word)
    _require_nonempty(word)
    result = Element.zero(ring, 2)
    m = len(word)
    for i in range(m):
        for j in range(i + 1, m + 1):
            if (i, j) == (0, m):
                continue
            piece = Word(word[i:j])
            if stable.contains(piece):
                result.add_term((piece, Word(word[:i] + word[j:])), 1)
    return result


def rho_L(v, stable, ring=INTEGER):
    """
    Pre-Lie comultiplication ρ_L(w) = Σ w_{i,j} ⊗ w_{1,i} w_{j,m+1} over simple cuts.

    Args:
        v (Word | Element): element of V (no empty word in the support)
        stable (StableSet): the stable set L

    Returns:
        Element: Word⊗Word element

    Raises:
        ValueError: if the empty word occurs in ``v``
    """
    element = as_element(v, ring)
    return element.apply(lambda w: _rho_word(w, stable, element.ring), arity=2)


class CutBialgebra(PhraseBialgebra):
    """Phrases of non-empty words with the cut comultiplication Δ_L."""
    name = 'cut'

    def __init__(self, stable, ring=INTEGER, max_length=None, cache_size=None):
        super().__init__(ring, cache_size)
        self.stable = stable
        self.max_length = MAX_CUT_LENGTH if max_length is None else max_length
        if not stable.verified:
            logger.warning(f"Stable set '{stable.descriptor}' is not verified; cut results rely on it being stable")

    @property
    def descriptor(self):
        return f"L={self.stable.descriptor}"

    def check_word(self, word):
        if len(word) == 0:
            raise ValueError("Non-strict phrase: the cut comultiplication needs non-empty words")
        _check_length(word, self.max_length)

    def word_terms(self, word):
        for pairs in _cut_pairs(word, self.stable):
            left, right = _split(word, pairs)
            yield left, right, 1

    def simple_terms(self, word):
        return _rho_word(word, self.stable, self.ring)


@functools.lru_cache(maxsize=64)
def cut_bialgebra(stable, ring=INTEGER, max_length=None):
    return CutBialgebra(stable, ring, max_length)


def delta_L(p, stable, ring=INTEGER, max_length=None):
    """
    Cut comultiplication on phrases: Δ(w) = w⊗1 + Σ_c l_c(w) ⊗ r_c(w), multiplicative.

    Raises:
        ValueError: if a phrase in the support contains the empty word
        LengthCapError: if a word exceeds the cut cap
    """
    ring = p.ring if isinstance(p, Element) else ring
    return cut_bialgebra(stable, ring, max_length).coproduct(p)


def theta_L(w, stable, ring=INTEGER, max_length=None):
    """Coaction V → P⊗V, Θ(w) = Δ(w) - w⊗1 with the right factor read as a word."""
    ring = w.ring if isinstance(w, Element) else ring
    return cut_bialgebra(stable, ring, max_length).theta(w)


def counit(p, ring=INTEGER):
    """Coefficient of the empty phrase 1."""
    return PhraseBialgebra(p.ring if isinstance(p, Element) else ring).counit(p)


def antipode_L(p, stable, ring=INTEGER, max_length=None):
    ring = p.ring if isinstance(p, Element) else ring
    return cut_bialgebra(stable, ring, max_length).antipode(p)


def _subword_splits(word):
    m = len(word)
    for size in range(m + 1):
        for chosen in itertools.combinations(range(m), size):
            picked = set(chosen)
            yield Word(word[k] for k in chosen), Word(word[k] for k in range(m) if k not in picked)


def delta_S(w, strong, ring=INTEGER, max_length=None):
    """
    Subword comultiplication Δ_S(w) = Σ w' ⊗ w/w' over index subsets with w' in S.

    With S the set of all words this is the shuffle comultiplication.
    """
    element = as_element(w, ring)
    limit = MAX_SUBWORD_LENGTH if max_length is None else max_length

    def on_word(word):
        if len(word) > limit:
            raise LengthCapError(f"Word of length {len(word)} exceeds the subword enumeration cap {limit}")
        result = Element.zero(element.ring, 2)
        for sub, rest in _subword_splits(word):
            if strong.contains(sub):
                result.add_term((sub, rest), 1)
        return result

    return element.apply(on_word, arity=2)
