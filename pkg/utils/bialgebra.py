import logging
import os
import threading

from utils.coefficients import Coefficient, INTEGER
from utils.words import Element, Phrase, UNIT_PHRASE, Word, as_element

logger = logging.getLogger(__name__)

CACHE_SIZE = int(os.environ.get('PHRASEHOPF_CACHE_SIZE', '4096'))


class PhraseBialgebra:
    """
    Shared machinery for the tensor algebras of phrases.

    A concrete family supplies ``word_terms(word)``: the non-empty
    cuts or inscriptions of a word as ``(left phrase, right word, weight)``
    triples. Everything else (the coaction, the multiplicative coproduct,
    the counit and the recursive antipode) is derived here.
    """
    name = 'phrases'

    def __init__(self, ring=INTEGER, cache_size=None):
        self.ring = ring
        self.cache_size = CACHE_SIZE if cache_size is None else cache_size
        self._lock = threading.RLock()
        self._coproduct_cache = {}
        self._antipode_cache = {}
        self._rho_cache = {}

    @property
    def descriptor(self):
        raise NotImplementedError

    def check_word(self, word):
        """Raise ValueError when ``word`` is outside the module the family lives on."""

    def check_phrase(self, phrase):
        for word in phrase:
            self.check_word(word)

    def word_terms(self, word):
        raise NotImplementedError

    def simple_terms(self, word):
        """The pre-Lie comultiplication ρ on one word, as a Word⊗Word element."""
        raise NotImplementedError

    def rho_word(self, word):
        word = Word(word)
        with self._lock:
            cached = self._rho_cache.get(word)
        if cached is None:
            cached = self.simple_terms(word)
            self._remember(self._rho_cache, word, cached)
        return cached

    def rho(self, v):
        return as_element(v, self.ring).apply(self.rho_word, arity=2)

    def _phrase_element(self, x):
        element = as_element(x, self.ring, kind='phrase')
        for phrase in element:
            self.check_phrase(phrase)
        return element

    def theta_word(self, word):
        """Coaction Θ(w) = 1⊗w + Σ weight · l⊗r, keys (Phrase, Word)."""
        word = Word(word)
        self.check_word(word)
        result = Element.basis((UNIT_PHRASE, word), self.ring, arity=2)
        for left, right, weight in self.word_terms(word):
            result.add_term((left, right), weight)
        return result

    def theta(self, v):
        return as_element(v, self.ring).apply(self.theta_word, arity=2)

    def coproduct_word(self, word):
        """Δ(w) = w⊗1 + 1⊗w + Σ weight · l⊗(r) on a one-word phrase."""
        word = Word(word)
        with self._lock:
            cached = self._coproduct_cache.get(word)
        if cached is not None:
            return cached
        self.check_word(word)
        result = Element.basis((Phrase((word,)), UNIT_PHRASE), self.ring, arity=2)
        result.add_term((UNIT_PHRASE, Phrase((word,))), 1)
        for left, right, weight in self.word_terms(word):
            result.add_term((left, Phrase((right,))), weight)
        logger.debug(f"{self.descriptor}: coproduct of {word} has {len(result)} terms")
        self._remember(self._coproduct_cache, word, result)
        return result

    def coproduct_phrase(self, phrase):
        result = Element.basis((UNIT_PHRASE, UNIT_PHRASE), self.ring, arity=2)
        for word in phrase:
            result = result.multiply(self.coproduct_word(word))
        return result

    def coproduct(self, p):
        """The comultiplication, extended linearly and multiplicatively to phrase elements."""
        return self._phrase_element(p).apply(self.coproduct_phrase, arity=2)

    def counit(self, p):
        """Coefficient of the empty phrase, tagged with the ring."""
        return Coefficient(as_element(p, self.ring, kind='phrase')[UNIT_PHRASE], self.ring)

    def antipode_word(self, word):
        """s(w) = -w - Σ weight · l · s(r) over the non-empty cuts or inscriptions."""
        word = Word(word)
        with self._lock:
            cached = self._antipode_cache.get(word)
        if cached is not None:
            return cached
        self.check_word(word)
        result = Element.basis(Phrase((word,)), self.ring, coeff=-1)
        neg = self.ring.neg
        mul = self.ring.mul
        for left, right, weight in self.word_terms(word):
            for phrase, value in self.antipode_word(right).items():
                result.add_term(left + phrase, neg(mul(weight, value)))
        self._remember(self._antipode_cache, word, result)
        return result

    def antipode_phrase(self, phrase):
        result = Element.basis(UNIT_PHRASE, self.ring)
        for word in reversed(phrase):
            result = result.multiply(self.antipode_word(word))
        return result

    def antipode(self, p):
        """Anti-homomorphic antipode with s(1) = 1."""
        return self._phrase_element(p).apply(self.antipode_phrase, arity=1)

    def leading_term(self, word):
        """Projection of Δ(w) onto (one-word phrase)⊗(one-word phrase), as Word⊗Word."""
        result = Element.zero(self.ring, 2)
        for (left, right), value in self.coproduct_word(word).items():
            if len(left) == 1 and len(right) == 1:
                result.add_term((left[0], right[0]), value)
        return result

    def _remember(self, cache, word, value):
        """Store one result, evicting the oldest entries beyond ``cache_size``."""
        with self._lock:
            cache[word] = value
            while len(cache) > self.cache_size:
                cache.pop(next(iter(cache)))

    def cache_sizes(self):
        with self._lock:
            return {
                'coproduct': len(self._coproduct_cache),
                'antipode': len(self._antipode_cache),
                'rho': len(self._rho_cache),
            }

    def clear_cache(self):
        with self._lock:
            self._coproduct_cache.clear()
            self._antipode_cache.clear()
            self._rho_cache.clear()
