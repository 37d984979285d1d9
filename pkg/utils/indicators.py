import functools
import itertools
import json
import logging
from fractions import Fraction

from utils.coefficients import INTEGER
from utils.cut_coalgebra import cut_bialgebra
from utils.inscription_coalgebra import inscription_bialgebra
from utils.words import (
    Element, Phrase, UNIT_PHRASE, Word, as_element, parse_basis,
)

logger = logging.getLogger(__name__)


class Indicator:
    """
    A linear functional on words or phrases, evaluated pointwise.

    Indicators never materialize their (possibly infinite) support; every
    product below composes evaluation callbacks.
    """

    def __init__(self, evaluate, ring=INTEGER, name='f'):
        self._evaluate = evaluate
        self.ring = ring
        self.name = name

    def __call__(self, basis):
        return self.ring.normalize(self._evaluate(basis))

    def __repr__(self):
        return f"Indicator({self.name})"

    @classmethod
    def table(cls, values, ring=INTEGER, name='table'):
        """Finite-support indicator; zero outside ``values``."""
        values = {basis: ring.normalize(v) for basis, v in values.items()}
        return cls(lambda basis: values.get(basis, ring.zero), ring, name)

    @classmethod
    def from_json(cls, rows, kind, ring=INTEGER, letters=None):
        """Load a table indicator from a JSON array of {basis, coeff}."""
        values = {}
        for row in rows:
            try:
                basis = parse_basis(row['basis'], kind, letters)
                values[basis] = ring.add(values.get(basis, ring.zero), ring.parse(str(row['coeff'])))
            except (KeyError, TypeError) as e:
                raise ValueError(f"Malformed indicator entry {row!r}: {str(e)}")
        return cls.table(values, ring)

    @classmethod
    def delta(cls, target, ring=INTEGER):
        """δ_w: value 1 on ``target`` and 0 elsewhere."""
        return cls(lambda basis: ring.one if basis == target else ring.zero, ring, f"delta:{target}")

    @classmethod
    def letter_count(cls, letter, ring=INTEGER):
        """f_A: occurrences of a letter in a word, or in all words of a phrase."""
        def evaluate(basis):
            if isinstance(basis, Phrase):
                return sum(w.count(letter) for w in basis)
            return basis.count(letter)
        return cls(evaluate, ring, f"f{letter}")

    @classmethod
    def word_length(cls, ring=INTEGER):
        """ℓ on words: the length."""
        return cls(len, ring, 'len')

    @classmethod
    def word_count(cls, ring=INTEGER):
        """ℓ on phrases: the number of words."""
        return cls(len, ring, 'words')

    @classmethod
    def zero(cls, ring=INTEGER):
        return cls(lambda basis: ring.zero, ring, '0')

    def __add__(self, other):
        add = self.ring.add
        return Indicator(lambda b: add(self(b), other(b)), self.ring, f"({self.name}+{other.name})")

    def __neg__(self):
        neg = self.ring.neg
        return Indicator(lambda b: neg(self(b)), self.ring, f"-{self.name}")

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.ring.normalize(c)
        mul = self.ring.mul
        return Indicator(lambda b: mul(c, self(b)), self.ring, f"{c}*{self.name}")


def pair_value(element, f, g):
    """Σ c · f(left) · g(right) over a two-factor element."""
    ring = element.ring
    total = ring.zero
    for (left, right), c in element.items():
        a = f(left)
        if a == 0:
            continue
        total = ring.add(total, ring.mul(c, ring.mul(a, g(right))))
    return total


def convolution(coproduct, f, g, name=None):
    """
    The product dual to a comultiplication: ⟨a, f⋆g⟩ = Σ f(a')g(a'').

    Args:
        coproduct (callable): basis element -> two-factor Element
        f (Indicator): left factor
        g (Indicator): right factor

    Returns:
        Indicator: the lazily evaluated product
    """
    return Indicator(lambda basis: pair_value(coproduct(basis), f, g), f.ring, name or f"({f.name}*{g.name})")


def bracket(coproduct, f, g):
    return convolution(coproduct, f, g) - convolution(coproduct, g, f)


def _rho_L(stable, ring):
    return cut_bialgebra(stable, ring).rho_word


def _rho_mu(pairing):
    return inscription_bialgebra(pairing).rho_word


def star_L_indicator(f, g, stable):
    return convolution(_rho_L(stable, f.ring), f, g)


def star_mu_indicator(f, g, pairing):
    return convolution(_rho_mu(pairing), f, g)


def star_L(f, g, stable, w):
    """
    ⟨w, f⋆_L g⟩ = Σ over simple cuts of f(w_{i,j}) g(w_{1,i} w_{j,m+1}).

    Raises:
        ValueError: for the empty word
    """
    return star_L_indicator(f, g, stable)(Word(w))


def bracket_L(f, g, stable, w):
    return bracket(_rho_L(stable, f.ring), f, g)(Word(w))


def star_mu(f, g, pairing, w):
    return star_mu_indicator(f, g, pairing)(Word(w))


def bracket_mu(f, g, pairing, w):
    return bracket(_rho_mu(pairing), f, g)(Word(w))


def right_action(rho, f, v):
    """v f = Σ f(v') v'' for the comultiplication ``rho`` on words."""
    element = v

    def on_word(word):
        result = Element.zero(element.ring)
        for (left, right), c in rho(word).items():
            a = f(left)
            if a != 0:
                result.add_term(right, element.ring.mul(c, a))
        return result

    return element.apply(on_word, arity=1)


def act_L(f, v, stable, ring=INTEGER):
    """
    Left Lie-algebra action f v = -v f on V.

    Raises:
        ValueError: if the empty word occurs in ``v``
    """
    element = as_element(v, ring)
    return -right_action(_rho_L(stable, element.ring), f, element)


def act_mu(f, v, pairing):
    """Action f w = -Σ ⟨l_a(w), f⟩ μ(w|_a) r_a(w) on W; lowers length by at least two."""
    element = as_element(v, pairing.ring)
    return -right_action(_rho_mu(pairing), f, element)


def _exponential(action, element):
    if element.ring.kind != 'rat':
        raise ValueError(f"Exponential action needs rational mode, ring is {element.ring.label}")
    total = element
    term = element
    k = 1
    # the action strictly lowers word length, so the series terminates
    while term:
        term = action(term).scale(Fraction(1, k))
        total = total + term
        k += 1
    return total


def exp_action(f, v, stable, ring=None):
    """
    e^{φ(f)}(v) = Σ_k φ(f)^k(v) / k! for the action on V.

    Raises:
        ValueError: unless the ring mode is rational
    """
    element = as_element(v, ring or f.ring)
    return _exponential(lambda x: act_L(f, x, stable), element)


def exp_action_mu(f, v, pairing):
    element = as_element(v, pairing.ring)
    return _exponential(lambda x: act_mu(f, x, pairing), element)


def gerstenhaber_circ(w, x, stable, ring=INTEGER):
    """
    w ∘_L x: all insertions of w into x, or 0 when w is not in L.

    Raises:
        ValueError: if either word is empty
    """
    w, x = Word(w), Word(x)
    if not w or not x:
        raise ValueError("Insertion product is defined on non-empty words only")
    result = Element.zero(ring)
    if not stable.contains(w):
        return result
    for i in range(len(x) + 1):
        result.add_term(Word(x[:i] + w + x[i:]), 1)
    return result


def gerstenhaber_product(a, b, stable):
    """Bilinear extension of the insertion product to word elements."""
    result = Element.zero(a.ring)
    for w, c in a.items():
        for x, d in b.items():
            result = result + gerstenhaber_circ(w, x, stable, a.ring).scale(a.ring.mul(c, d))
    return result


def phrase_star(p, y, stable, ring=INTEGER):
    """
    p∗y = Σ x_1 w_1 x_2 ... w_k x_{k+1} over factorizations y = x_1...x_{k+1}.

    Interior pieces x_2..x_k are non-empty so the inserted words stay
    separated. Gives y for p = 1, w_1 for y = φ and k = 1, and 0 when
    some w_i is not in L.

    Raises:
        ValueError: if ``p`` contains the empty word
    """
    p, y = Phrase(p), Word(y)
    if not p.is_strict:
        raise ValueError("Non-strict phrase: p∗y needs non-empty words")
    result = Element.zero(ring)
    k = len(p)
    if k == 0:
        return result.add_term(y, 1)
    if not all(stable.contains(w) for w in p):
        return result
    n = len(y)
    for points in itertools.combinations(range(n + 1), k):
        letters = list(y[:points[0]])
        for u, w in enumerate(p):
            letters.extend(w)
            stop = points[u + 1] if u + 1 < k else n
            letters.extend(y[points[u]:stop])
        result.add_term(Word(letters), 1)
    return result


def _pairing_star(p, y, pairing, letter_pairs):
    """Every x_1 A_1 w_1 B_1 x_2 ... A_k w_k B_k x_{k+1} with weight Π μ(A_u, B_u)."""
    ring = pairing.ring
    result = Element.zero(ring)
    k = len(p)
    n = len(y)
    for points in itertools.combinations_with_replacement(range(n + 1), k):
        for chosen in itertools.product(letter_pairs, repeat=k):
            weight = ring.one
            letters = list(y[:points[0]]) if k else list(y)
            for u, w in enumerate(p):
                a, b = chosen[u]
                weight = ring.mul(weight, pairing(a, b))
                letters.append(a)
                letters.extend(w)
                letters.append(b)
                stop = points[u + 1] if u + 1 < k else n
                letters.extend(y[points[u]:stop])
            result.add_term(Word(letters), weight)
    return result


def _dual_product(p, q, piece, ring):
    """
    Sum over splittings of p into consecutive chunks matched against q.

    Each slot pairs a (possibly empty) chunk of p with either the next
    word of q or with nothing; the empty chunk against nothing is not a
    slot. ``piece(chunk, y)`` returns the words contributed by one slot.
    """
    p, q = Phrase(p), Phrase(q)

    @functools.lru_cache(maxsize=None)
    def rest(pi, qi):
        if pi == len(p) and qi == len(q):
            return Element.basis(UNIT_PHRASE, ring)
        result = Element.zero(ring)
        options = [None] + ([q[qi]] if qi < len(q) else [])
        for size in range(len(p) - pi + 1):
            chunk = Phrase(p[pi:pi + size])
            for y in options:
                if size == 0 and y is None:
                    continue
                words = piece(chunk, y)
                if not words:
                    continue
                tail = rest(pi + size, qi if y is None else qi + 1)
                for word, c in words.items():
                    for phrase, d in tail.items():
                        result.add_term(Phrase((word,)) + phrase, ring.mul(c, d))
        return result

    return rest(0, 0)


def dual_product_L(p, q, stable, ring=INTEGER):
    """
    p ∘_L q, the product dual to Δ_L: ⟨r, p ∘_L q⟩ is the coefficient of p⊗q in Δ_L(r).

    Raises:
        ValueError: if p or q contains the empty word
    """
    p, q = Phrase(p), Phrase(q)
    if not p.is_strict or not q.is_strict:
        raise ValueError("Non-strict phrase: the dual cut product needs non-empty words")

    def piece(chunk, y):
        if y is None:
            # a whole word of r on the left, from its w⊗1 term; w need not lie in L
            result = Element.zero(ring)
            return result.add_term(chunk[0], 1) if len(chunk) == 1 else result
        return phrase_star(chunk, y, stable, ring)

    return _dual_product(p, q, piece, ring)


def dual_product_mu(p, q, pairing):
    """
    p ∘_μ q, the product dual to Δ_μ.

    Candidates are enumerated constructively from the support of μ, so
    every contributing phrase has |p| + |q| + 2k letters.

    Raises:
        ValueError: if μ has unbounded support
    """
    letter_pairs = pairing.support()
    ring = pairing.ring

    def piece(chunk, y):
        if y is None:
            result = Element.zero(ring)
            return result.add_term(chunk[0], 1) if len(chunk) == 1 else result
        return _pairing_star(chunk, y, pairing, letter_pairs)

    return _dual_product(Phrase(p), Phrase(q), piece, ring)


def deconcat(p, ring=INTEGER):
    """Σ_i (w_1|...|w_i) ⊗ (w_{i+1}|...|w_k)."""
    p = Phrase(p)
    result = Element.zero(ring, 2)
    for i in range(len(p) + 1):
        result.add_term((Phrase(p[:i]), Phrase(p[i:])), 1)
    return result


def delta_L_convolution(f, g, stable):
    """Phrase-indicator product dual to Δ_L: ⟨r, f∘g⟩ = Σ f(r')g(r'')."""
    bialgebra = cut_bialgebra(stable, f.ring)
    return convolution(lambda r: bialgebra.coproduct(r), f, g)


def delta_mu_convolution(f, g, pairing):
    bialgebra = inscription_bialgebra(pairing)
    return convolution(lambda r: bialgebra.coproduct(r), f, g)


def parse_indicator(text, ring=INTEGER, letters=None, kind='word'):
    """
    Parse an indicator spec.

    Accepted forms: ``fA`` or ``f:A`` (letter count), ``len`` (word length),
    ``words`` (number of words of a phrase), ``zero``, ``delta:<basis>``,
    or a path to a JSON array of {basis, coeff}.

    Raises:
        ValueError: for an unreadable spec
    """
    text = text.strip()
    if text == 'len':
        return Indicator.word_length(ring)
    if text == 'words':
        return Indicator.word_count(ring)
    if text == 'zero':
        return Indicator.zero(ring)
    if text.startswith('delta:'):
        return Indicator.delta(parse_basis(text[len('delta:'):], kind, letters), ring)
    if text.startswith('f:') and len(text) > 2:
        return Indicator.letter_count(text[2:], ring)
    if text.startswith('f') and len(text) == 2:
        return Indicator.letter_count(text[1], ring)
    try:
        with open(text, 'r', encoding='utf-8') as f:
            rows = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ValueError(f"Unknown indicator '{text}': {str(e)}")
    return Indicator.from_json(rows, kind, ring, letters)
