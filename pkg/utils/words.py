import itertools
import json
import logging

from utils.coefficients import INTEGER, RingMismatchError

logger = logging.getLogger(__name__)

RESERVED_CHARS = set('|(),~ \t\r\n')
EMPTY_WORD_TEXT = '~'
EMPTY_PHRASE_TEXT = '1'
TENSOR_SEPARATOR = ' ⊗ '


class ParseError(ValueError):
    """Malformed word, phrase, tree or descriptor text; ``position`` is 1-based."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class Word(tuple):
    """
    A finite sequence of letters. Letters are non-empty strings.

    ``Word('ABA')`` splits a string into one-character letters; use
    ``parse_word`` for multi-character alphabets.
    """
    __slots__ = ()

    def __new__(cls, letters=()):
        return super().__new__(cls, letters)

    def __add__(self, other):
        return Word(tuple.__add__(self, other))

    def factor(self, i, j):
        """
        Return the factor w_{i,j} = w(i) ... w(j-1), 1-based.

        Raises:
            ValueError: unless 1 <= i <= j <= len(w) + 1
        """
        if not 1 <= i <= j <= len(self) + 1:
            raise ValueError(f"Factor indices ({i}, {j}) out of range for a word of length {len(self)}")
        return Word(tuple.__getitem__(self, slice(i - 1, j - 1)))

    @property
    def length(self):
        return len(self)

    def __repr__(self):
        return f"Word({render_word(self)!r})"

    def __str__(self):
        return render_word(self)


EMPTY_WORD = Word()


class Phrase(tuple):
    """A finite sequence of words; the empty phrase is the unit 1."""
    __slots__ = ()

    def __new__(cls, words=()):
        return super().__new__(cls, (w if isinstance(w, Word) else Word(w) for w in words))

    def __add__(self, other):
        return Phrase(tuple.__add__(self, other))

    @property
    def length(self):
        """Number of words, the grading of phrases."""
        return len(self)

    @property
    def letter_count(self):
        return sum(len(w) for w in self)

    @property
    def is_strict(self):
        return all(len(w) > 0 for w in self)

    def __repr__(self):
        return f"Phrase({render_phrase(self)!r})"

    def __str__(self):
        return render_phrase(self)


UNIT_PHRASE = Phrase()


def concat_words(w, x):
    return Word(w) + Word(x)


def phrase_product(p, q):
    """Concatenate the word sequences of two phrases, or multiply two phrase elements."""
    if isinstance(p, Element) or isinstance(q, Element):
        return as_element(p, _ring_of(p, q)).multiply(as_element(q, _ring_of(p, q)))
    return Phrase(p) + Phrase(q)


def _ring_of(*items):
    for item in items:
        if isinstance(item, Element):
            return item.ring
    return INTEGER


def sort_key(basis):
    """Deterministic total order: words by (length, letters), phrases by (words, word keys)."""
    if isinstance(basis, Phrase):
        return (1, len(basis), tuple((len(w), tuple(w)) for w in basis))
    if isinstance(basis, Word):
        return (0, len(basis), tuple(basis))
    if hasattr(basis, 'sort_key'):
        return (3, basis.sort_key())
    return (2, tuple(sort_key(b) for b in basis))


def needs_separator(letters):
    """True when a declared alphabet has a multi-character letter, so juxtaposed text can be ambiguous."""
    return bool(letters) and any(len(letter) > 1 for letter in letters)


def render_word(word, separated=False):
    """Juxtaposed letters, or comma-separated ones when ``separated`` is set or a letter is longer than one character."""
    if not word:
        return EMPTY_WORD_TEXT
    if not separated and all(len(letter) == 1 for letter in word):
        return ''.join(word)
    return ','.join(word)


def render_phrase(phrase, separated=False):
    if not phrase:
        return EMPTY_PHRASE_TEXT
    return '(' + '|'.join(render_word(w, separated) for w in phrase) + ')'


def render_basis(basis, separated=False):
    if isinstance(basis, Phrase):
        return render_phrase(basis, separated)
    if isinstance(basis, Word):
        return render_word(basis, separated)
    if not isinstance(basis, tuple) or hasattr(basis, 'sort_key'):
        return str(basis)
    return TENSOR_SEPARATOR.join(render_basis(b, separated) for b in basis)


def _tokenize_word(text, offset, letters):
    if letters is None:
        result = []
        for k, ch in enumerate(text):
            if ch in RESERVED_CHARS:
                raise ParseError(f"Unexpected character '{ch}' in word", offset + k)
            result.append(ch)
        return result

    if ',' in text:
        result = []
        position = offset
        for token in text.split(','):
            if token not in letters:
                raise ParseError(f"Unknown letter '{token}'", position)
            result.append(token)
            position += len(token) + 1
        return result

    # greedy longest match against the declared alphabet
    ordered = sorted(letters, key=len, reverse=True)
    result = []
    k = 0
    while k < len(text):
        for letter in ordered:
            if text.startswith(letter, k):
                result.append(letter)
                k += len(letter)
                break
        else:
            raise ParseError(f"Cannot match a letter at '{text[k:]}'", offset + k)
    return result


def parse_word(text, letters=None, offset=1):
    """
    Parse word text into a Word.

    Args:
        text (str): juxtaposed single-character letters, comma-separated
            tokens, or '~' for the empty word
        letters (list): optional declared alphabet of (possibly multi-character) tokens
        offset (int): 1-based position of ``text`` inside a larger input

    Returns:
        Word: parsed word

    Raises:
        ParseError: on reserved characters or unknown letters
    """
    stripped = text.strip()
    offset += len(text) - len(text.lstrip())
    if stripped == EMPTY_WORD_TEXT:
        return EMPTY_WORD
    if not stripped:
        raise ParseError(f"Empty word text, write '{EMPTY_WORD_TEXT}' for the empty word", offset)
    return Word(_tokenize_word(stripped, offset, letters))


def parse_phrase(text, letters=None):
    """
    Parse "(w1|w2|...)", "1" for the empty phrase, or a bare word as a one-word phrase.

    Raises:
        ParseError: with the 1-based position of the first problem
    """
    stripped = text.strip()
    base = len(text) - len(text.lstrip()) + 1
    if stripped == EMPTY_PHRASE_TEXT:
        return UNIT_PHRASE
    if not stripped:
        raise ParseError("Empty phrase text, write '1' for the empty phrase", base)
    if not stripped.startswith('('):
        if ')' in stripped or '|' in stripped:
            raise ParseError("Phrase must be enclosed in parentheses", base)
        return Phrase((parse_word(stripped, letters, base),))
    if not stripped.endswith(')'):
        raise ParseError("Missing closing parenthesis", base + len(stripped))
    body = stripped[1:-1]
    if '(' in body or ')' in body:
        k = min(i for i in (body.find('('), body.find(')')) if i >= 0)
        raise ParseError("Nested parentheses are not allowed in a phrase", base + 1 + k)
    words = []
    position = base + 1
    for segment in body.split('|'):
        words.append(parse_word(segment, letters, position))
        position += len(segment) + 1
    return Phrase(words)


def parse_basis(text, kind, letters=None):
    if kind == 'word':
        return parse_word(text, letters)
    if kind == 'phrase':
        return parse_phrase(text, letters)
    raise ValueError(f"Unsupported basis kind: {kind}")


def map_letters(alpha, x):
    """
    Apply a letter map letter-wise to a word, a phrase or (linearly) an element.

    Raises:
        ValueError: if a letter has no image under ``alpha``
    """
    if isinstance(x, Element):
        return x.map_keys(lambda key: map_letters(alpha, key))
    if isinstance(x, Phrase):
        return Phrase(map_letters(alpha, w) for w in x)
    if isinstance(x, Word):
        try:
            return Word(alpha[letter] for letter in x)
        except KeyError as e:
            raise ValueError(f"Letter {e.args[0]!r} is not mapped")
    if isinstance(x, tuple):
        return tuple(map_letters(alpha, b) for b in x)
    raise ValueError(f"Cannot map letters of {type(x).__name__}")


def iter_words(alphabet, max_length, min_length=0):
    """All words over ``alphabet`` with min_length <= length <= max_length, shortest first."""
    for n in range(min_length, max_length + 1):
        for letters in itertools.product(alphabet, repeat=n):
            yield Word(letters)


class Element:
    """
    Exact sparse linear combination of basis elements.

    Keys are Words, Phrases (arity 1) or plain tuples of them (tensor
    arity >= 2). Stored coefficients are never zero.
    """
    __slots__ = ('_terms', 'ring', 'arity')

    def __init__(self, terms=None, ring=INTEGER, arity=1):
        self.ring = ring
        self.arity = arity
        self._terms = {}
        if terms:
            pairs = terms.items() if isinstance(terms, dict) else terms
            for key, value in pairs:
                self._accumulate(key, ring.normalize(value))

    @classmethod
    def _wrap(cls, terms, ring, arity):
        element = cls.__new__(cls)
        element._terms = terms
        element.ring = ring
        element.arity = arity
        return element

    @classmethod
    def basis(cls, key, ring=INTEGER, arity=1, coeff=1):
        return cls({key: coeff}, ring, arity)

    @classmethod
    def zero(cls, ring=INTEGER, arity=1):
        return cls._wrap({}, ring, arity)

    def _accumulate(self, key, value):
        terms = self._terms
        if key in terms:
            total = self.ring.add(terms[key], value)
            if total == 0:
                del terms[key]
            else:
                terms[key] = total
        elif value != 0:
            terms[key] = value

    def copy(self):
        return Element._wrap(dict(self._terms), self.ring, self.arity)

    def __getitem__(self, key):
        return self._terms.get(key, self.ring.zero)

    def __contains__(self, key):
        return key in self._terms

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: sort_key(kv[0]))

    def is_zero(self):
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool) and other == 0:
            return not self._terms
        if not isinstance(other, Element):
            return NotImplemented
        if not self._terms and not other._terms:
            # zero of any tensor arity
            return self.ring == other.ring
        return self.ring == other.ring and self.arity == other.arity and self._terms == other._terms

    __hash__ = None

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(f"Ring mode mismatch: {self.ring.label} vs {other.ring.label}")
        if self.arity != other.arity and self._terms and other._terms:
            raise ValueError(f"Tensor arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other):
        self._check(other)
        arity = self.arity if self._terms else other.arity
        result = Element._wrap(dict(self._terms), self.ring, arity)
        for key, value in other._terms.items():
            result._accumulate(key, value)
        return result

    def __neg__(self):
        neg = self.ring.neg
        return Element._wrap({k: neg(v) for k, v in self._terms.items()}, self.ring, self.arity)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.ring.normalize(c)
        if c == 0:
            return Element.zero(self.ring, self.arity)
        mul = self.ring.mul
        return Element._wrap({k: mul(c, v) for k, v in self._terms.items()}, self.ring, self.arity)

    def __rmul__(self, c):
        return self.scale(c)

    def add_term(self, key, value):
        """In-place accumulation, used by builders."""
        self._accumulate(key, self.ring.normalize(value))
        return self

    def factors(self, key):
        return key if self.arity > 1 else (key,)

    @staticmethod
    def make_key(factors):
        return factors[0] if len(factors) == 1 else tuple(factors)

    def tensor(self, other):
        """tensor2 / tensor3: bilinear tensor product of two elements."""
        if self.ring != other.ring:
            raise RingMismatchError(f"Ring mode mismatch: {self.ring.label} vs {other.ring.label}")
        result = Element.zero(self.ring, self.arity + other.arity)
        mul = self.ring.mul
        for k1, v1 in self._terms.items():
            f1 = self.factors(k1)
            for k2, v2 in other._terms.items():
                result._accumulate(f1 + other.factors(k2), mul(v1, v2))
        return result

    def multiply(self, other):
        """Componentwise concatenation product, e.g. in P⊗P: (a⊗b)(c⊗d) = ac⊗bd."""
        self._check(other)
        result = Element.zero(self.ring, self.arity)
        mul = self.ring.mul
        arity = self.arity
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                if arity == 1:
                    key = k1 + k2
                else:
                    key = tuple(a + b for a, b in zip(k1, k2))
                result._accumulate(key, mul(v1, v2))
        return result

    def apply(self, fn, arity=None):
        """Extend ``fn`` (basis key -> Element) linearly."""
        result = None
        mul = self.ring.mul
        for key, value in self._terms.items():
            image = fn(key)
            if result is None:
                result = Element.zero(self.ring, image.arity)
            for k, v in image._terms.items():
                result._accumulate(k, mul(value, v))
        if result is None:
            return Element.zero(self.ring, arity or self.arity)
        return result

    def apply_at(self, position, fn):
        """Apply a linear map to one tensor factor (0-based position)."""
        result = None
        mul = self.ring.mul
        for key, value in self._terms.items():
            factors = self.factors(key)
            image = fn(factors[position])
            if result is None:
                result = Element.zero(self.ring, self.arity - 1 + image.arity)
            head, tail = factors[:position], factors[position + 1:]
            for k, v in image._terms.items():
                new_key = Element.make_key(head + image.factors(k) + tail)
                result._accumulate(new_key, mul(value, v))
        if result is None:
            return Element.zero(self.ring, self.arity)
        return result

    def permute(self, order):
        """Reorder tensor factors: new factor n is old factor order[n]."""
        terms = {}
        for key, value in self._terms.items():
            terms[tuple(key[i] for i in order)] = value
        return Element._wrap(terms, self.ring, self.arity)

    def map_keys(self, fn):
        result = Element.zero(self.ring, self.arity)
        for key, value in self._terms.items():
            result._accumulate(fn(key), value)
        return result

    def project(self, predicate):
        return Element._wrap({k: v for k, v in self._terms.items() if predicate(k)}, self.ring, self.arity)

    def render(self, separated=False):
        """Canonical text: terms in basis order, 'c · basis', '0' for the zero element."""
        if not self._terms:
            return '0'
        parts = []
        for key, value in self.sorted_items():
            basis = render_basis(key, separated)
            if value == 1:
                parts.append(basis)
            elif self.ring.kind != 'mod' and value == -1:
                parts.append(f"-{basis}")
            else:
                parts.append(f"{self.ring.render(value)} · {basis}")
        return ' + '.join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Element({self.render()!r}, ring={self.ring.label})"

    def to_json(self, separated=False):
        """JSON-ready list: {basis, coeff} for arity 1, {left, right, coeff} for pairs."""
        names = {1: ('basis',), 2: ('left', 'right'), 3: ('left', 'middle', 'right')}.get(self.arity)
        if names is None:
            raise ValueError(f"No JSON schema for tensor arity {self.arity}")
        rows = []
        for key, value in self.sorted_items():
            row = {name: render_basis(b, separated) for name, b in zip(names, self.factors(key))}
            row['coeff'] = self.ring.render(value)
            rows.append(row)
        return rows

    def dumps(self, separated=False):
        return json.dumps(self.to_json(separated), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, rows, kinds, ring=INTEGER, letters=None):
        """
        Rebuild an element from ``to_json`` output.

        Args:
            rows (list): decoded JSON rows
            kinds (tuple): basis kind ('word' or 'phrase') per tensor factor
            ring (Ring): coefficient ring of the values
            letters (list): optional declared alphabet
        """
        names = {1: ('basis',), 2: ('left', 'right'), 3: ('left', 'middle', 'right')}[len(kinds)]
        result = cls.zero(ring, len(kinds))
        for row in rows:
            factors = tuple(parse_basis(row[name], kind, letters) for name, kind in zip(names, kinds))
            result.add_term(cls.make_key(factors), ring.parse(row['coeff']))
        return result


def as_element(x, ring=INTEGER, kind=None):
    """
    Coerce a Word, Phrase or Element into an Element.

    ``kind='phrase'`` lifts a bare Word to the one-word phrase (w).
    """
    if isinstance(x, Element):
        return x
    if kind == 'phrase' and isinstance(x, Word):
        x = Phrase((x,))
    return Element.basis(x, ring)


def tensor2(a, b):
    return a.tensor(b)


def tensor3(a, b, c):
    return a.tensor(b).tensor(c)
