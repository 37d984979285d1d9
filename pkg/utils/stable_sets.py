import itertools
import logging
from dataclasses import dataclass, field

from utils.words import EMPTY_WORD, ParseError, Word, iter_words, map_letters

logger = logging.getLogger(__name__)


class StableSet:
    """
    A set L of non-empty words, given by a membership predicate.

    Built-in subclasses satisfy the deletion/insertion condition by
    construction; ``verified`` is False for sets that are only checked up
    to a length bound (custom predicates, unions).
    """
    verified = True

    def contains(self, word):
        raise NotImplementedError

    def __contains__(self, word):
        return self.contains(word)

    @property
    def descriptor(self):
        raise NotImplementedError

    def __str__(self):
        return self.descriptor


@dataclass(frozen=True)
class AllNonEmpty(StableSet):
    def contains(self, word):
        return len(word) > 0

    @property
    def descriptor(self):
        return 'all'


@dataclass(frozen=True)
class NoWords(StableSet):
    def contains(self, word):
        return False

    @property
    def descriptor(self):
        return 'none'


@dataclass(frozen=True)
class LetterCountZero(StableSet):
    letter: str

    def contains(self, word):
        return len(word) > 0 and self.letter not in word

    @property
    def descriptor(self):
        return f"zero:{self.letter}"


@dataclass(frozen=True)
class LetterCountDivisible(StableSet):
    letter: str
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"Divisor must be >= 1, got {self.modulus}")

    def contains(self, word):
        return len(word) > 0 and word.count(self.letter) % self.modulus == 0

    @property
    def descriptor(self):
        return f"divisible:{self.letter}:{self.modulus}"


@dataclass(frozen=True)
class GroupWeightZero(StableSet):
    """Words whose letter weights in Z^d sum to zero; unlisted letters weigh 0."""
    weights: tuple

    def __post_init__(self):
        sizes = {len(vector) for _, vector in self.weights}
        if len(sizes) > 1:
            raise ValueError(f"Weight vectors must share one dimension, got sizes {sorted(sizes)}")

    @classmethod
    def from_mapping(cls, mapping):
        return cls(tuple(sorted((letter, tuple(vector)) for letter, vector in mapping.items())))

    def contains(self, word):
        if not word:
            return False
        table = dict(self.weights)
        if not table:
            return True
        total = [0] * len(next(iter(table.values())))
        for letter in word:
            vector = table.get(letter)
            if vector:
                for k, x in enumerate(vector):
                    total[k] += x
        return not any(total)

    @property
    def descriptor(self):
        parts = [f"{letter}=" + '/'.join(str(x) for x in vector) for letter, vector in self.weights]
        return 'weight:' + ','.join(parts)


@dataclass(frozen=True)
class Intersection(StableSet):
    members: tuple

    @property
    def verified(self):
        return all(m.verified for m in self.members)

    def contains(self, word):
        return len(word) > 0 and all(m.contains(word) for m in self.members)

    @property
    def descriptor(self):
        return 'intersect:' + '&'.join(m.descriptor for m in self.members)


@dataclass(frozen=True)
class Union(StableSet):
    """A union of stable sets; generally not stable, so never trusted."""
    members: tuple
    verified = False

    def contains(self, word):
        return any(m.contains(word) for m in self.members)

    @property
    def descriptor(self):
        return 'union:' + '&'.join(m.descriptor for m in self.members)


@dataclass(frozen=True)
class Preimage(StableSet):
    """The stable set of words whose letter-wise image under ``alpha`` lies in ``base``."""
    alpha: tuple
    base: StableSet

    @classmethod
    def from_mapping(cls, mapping, base):
        return cls(tuple(sorted(mapping.items())), base)

    @property
    def verified(self):
        return self.base.verified

    def contains(self, word):
        return self.base.contains(map_letters(dict(self.alpha), word))

    @property
    def descriptor(self):
        arrows = ','.join(f"{a}>{b}" for a, b in self.alpha)
        return f"preimage:{arrows}:{self.base.descriptor}"


@dataclass(frozen=True, eq=False)
class CustomStableSet(StableSet):
    """Arbitrary predicate; hashed by identity, verified only up to a bound."""
    predicate: object
    name: str = 'custom'
    verified = False

    def contains(self, word):
        return len(word) > 0 and bool(self.predicate(word))

    @property
    def descriptor(self):
        return self.name


class StronglyStableSet:
    """A set S of words containing the empty word, closed under subword deletion/insertion."""
    verified = True

    def contains(self, word):
        raise NotImplementedError

    def __contains__(self, word):
        return self.contains(word)

    @property
    def descriptor(self):
        raise NotImplementedError

    def __str__(self):
        return self.descriptor


@dataclass(frozen=True)
class AllWords(StronglyStableSet):
    def contains(self, word):
        return True

    @property
    def descriptor(self):
        return 'all'


@dataclass(frozen=True)
class FromStable(StronglyStableSet):
    """A stable set with the empty word adjoined."""
    stable: StableSet

    @property
    def verified(self):
        return self.stable.verified

    def contains(self, word):
        return len(word) == 0 or self.stable.contains(word)

    @property
    def descriptor(self):
        return f"stable:{self.stable.descriptor}"


@dataclass(frozen=True, eq=False)
class CustomStronglyStableSet(StronglyStableSet):
    predicate: object
    name: str = 'custom'
    verified = False

    def contains(self, word):
        return len(word) == 0 or bool(self.predicate(word))

    @property
    def descriptor(self):
        return self.name


def contains(stable, word):
    return stable.contains(word)


@dataclass
class StabilityReport:
    descriptor: str
    alphabet: tuple
    max_length: int
    passed: bool = True
    checked: int = 0
    counterexample: dict | None = field(default=None)

    def to_dict(self):
        return {
            'descriptor': self.descriptor,
            'alphabet': list(self.alphabet),
            'max_length': self.max_length,
            'passed': self.passed,
            'checked': self.checked,
            'counterexample': self.counterexample,
        }


def verify_stability(stable, alphabet, max_length):
    """
    Exhaustively check the deletion/insertion condition for a stable set.

    For every word w of length m <= max_length and every (i, j) != (1, m+1)
    with w_{i,j} in L, w must lie in L exactly when w_{1,i} w_{j,m+1} does.

    Args:
        stable (StableSet): the candidate set
        alphabet (iterable): finite alphabet to enumerate over
        max_length (int): maximal word length

    Returns:
        StabilityReport: pass, or the first counterexample (w, i, j) 1-based
    """
    if max_length < 1:
        raise ValueError("max_length must be >= 1")
    alphabet = tuple(alphabet)
    report = StabilityReport(stable.descriptor, alphabet, max_length)
    for word in iter_words(alphabet, max_length, min_length=1):
        m = len(word)
        in_set = stable.contains(word)
        for i in range(m):
            for j in range(i + 1, m + 1):
                if i == 0 and j == m:
                    continue
                if not stable.contains(Word(word[i:j])):
                    continue
                report.checked += 1
                rest = Word(word[:i] + word[j:])
                if stable.contains(rest) != in_set:
                    report.passed = False
                    report.counterexample = {
                        'word': str(word), 'i': i + 1, 'j': j + 1,
                        'word_in_set': in_set, 'remainder': str(rest),
                    }
                    logger.info(f"Stability fails for {stable.descriptor} at {word} ({i + 1}, {j + 1})")
                    return report
    logger.debug(f"Stability of {stable.descriptor} verified on {report.checked} factor pairs")
    return report


def verify_strong_stability(strong, alphabet, max_length):
    """
    Exhaustively check w' in S => (w in S <=> w/w' in S) over all subwords w'.

    Subwords are taken as index subsets, so repeated letters are visited once
    per choice of positions.
    """
    if max_length < 1:
        raise ValueError("max_length must be >= 1")
    alphabet = tuple(alphabet)
    report = StabilityReport(strong.descriptor, alphabet, max_length)
    if not strong.contains(EMPTY_WORD):
        report.passed = False
        report.counterexample = {'word': '~', 'subword': '~', 'reason': 'empty word missing'}
        return report
    for word in iter_words(alphabet, max_length):
        m = len(word)
        in_set = strong.contains(word)
        for size in range(m + 1):
            for chosen in itertools.combinations(range(m), size):
                sub = Word(word[k] for k in chosen)
                if not strong.contains(sub):
                    continue
                report.checked += 1
                picked = set(chosen)
                rest = Word(word[k] for k in range(m) if k not in picked)
                if strong.contains(rest) != in_set:
                    report.passed = False
                    report.counterexample = {
                        'word': str(word), 'subword': str(sub),
                        'word_in_set': in_set, 'remainder': str(rest),
                    }
                    logger.info(f"Strong stability fails for {strong.descriptor} at {word} / {sub}")
                    return report
    return report


def _split_members(body, position):
    parts = body.split('&')
    members = []
    offset = position
    for part in parts:
        members.append(parse_stable(part, offset))
        offset += len(part) + 1
    if len(members) < 2:
        raise ParseError("Expected at least two '&'-separated descriptors", position)
    return tuple(members)


def parse_stable(text, position=1):
    """
    Parse a stable-set descriptor.

    Accepted forms: ``all``, ``none``, ``zero:A``, ``divisible:A:N``,
    ``weight:A=1/0,B=-1/1``, ``intersect:d1&d2``, ``union:d1&d2``.

    Raises:
        ParseError: for unknown or malformed descriptors
    """
    text = text.strip()
    head, _, body = text.partition(':')
    if head == 'all' and not body:
        return AllNonEmpty()
    if head == 'none' and not body:
        return NoWords()
    if head == 'zero':
        if not body:
            raise ParseError("zero: needs a letter", position + len(head) + 1)
        return LetterCountZero(body)
    if head == 'divisible':
        letter, _, modulus = body.rpartition(':')
        try:
            return LetterCountDivisible(letter, int(modulus))
        except ValueError:
            raise ParseError(f"Invalid divisible descriptor '{text}'", position)
    if head == 'weight':
        mapping = {}
        for entry in body.split(','):
            letter, eq, vector = entry.partition('=')
            if not eq or not letter:
                raise ParseError(f"Invalid weight entry '{entry}'", position + len(head) + 1)
            try:
                mapping[letter] = tuple(int(x) for x in vector.split('/'))
            except ValueError:
                raise ParseError(f"Invalid weight vector '{vector}'", position + len(head) + 1)
        return GroupWeightZero.from_mapping(mapping)
    if head == 'intersect':
        return Intersection(_split_members(body, position + len(head) + 1))
    if head == 'union':
        return Union(_split_members(body, position + len(head) + 1))
    raise ParseError(f"Unknown stable-set descriptor '{text}'", position)


def parse_strong(text):
    """Parse ``all`` or ``stable:<stable descriptor>`` (the stable set with φ adjoined)."""
    text = text.strip()
    if text == 'all':
        return AllWords()
    if text.startswith('stable:'):
        return FromStable(parse_stable(text[len('stable:'):], position=len('stable:') + 1))
    raise ParseError(f"Unknown strongly stable descriptor '{text}'", 1)
