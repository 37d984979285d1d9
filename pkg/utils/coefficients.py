import logging
from dataclasses import dataclass
from fractions import Fraction

logger = logging.getLogger(__name__)

RING_KINDS = ('int', 'rat', 'mod')


class RingMismatchError(ValueError):
    """Raised when values from two different ring modes are combined."""


@dataclass(frozen=True)
class Ring:
    """
    One of the three exact coefficient rings.

    Values handled by a ring are plain Python numbers: ``int`` for integer
    and modular mode (the latter always reduced into ``[0, N)``) and
    ``fractions.Fraction`` for rational mode.
    """
    kind: str = 'int'
    modulus: int | None = None

    def __post_init__(self):
        if self.kind not in RING_KINDS:
            raise ValueError(f"Unsupported ring mode: {self.kind}")
        if self.kind == 'mod':
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise ValueError(f"Modulus must be an integer >= 2, got {self.modulus!r}")
        elif self.modulus is not None:
            raise ValueError(f"Ring mode {self.kind} takes no modulus")

    @property
    def label(self):
        if self.kind == 'mod':
            return f"mod:{self.modulus}"
        return self.kind

    @property
    def zero(self):
        return Fraction(0) if self.kind == 'rat' else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == 'rat' else 1

    def normalize(self, value):
        """
        Bring a number into the canonical representation of this ring.

        Raises:
            ValueError: if the value has no exact image (a proper fraction
                in integer or modular mode, a float anywhere).
        """
        if isinstance(value, bool) or isinstance(value, float):
            raise ValueError(f"Inexact or boolean coefficient rejected: {value!r}")
        if self.kind == 'rat':
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValueError(f"Coefficient {value} is not an integer in ring {self.label}")
            value = value.numerator
        if not isinstance(value, int):
            raise ValueError(f"Unsupported coefficient type: {type(value).__name__}")
        if self.kind == 'mod':
            return value % self.modulus
        return value

    def add(self, a, b):
        if self.kind == 'mod':
            return (a + b) % self.modulus
        return a + b

    def mul(self, a, b):
        if self.kind == 'mod':
            return (a * b) % self.modulus
        return a * b

    def neg(self, a):
        if self.kind == 'mod':
            return (-a) % self.modulus
        return -a

    def render(self, value):
        if self.kind == 'rat':
            if value.denominator == 1:
                return str(value.numerator)
            return f"{value.numerator}/{value.denominator}"
        return str(value)

    def parse(self, text):
        """Parse decimal text ("-3", "5/6") into a normalized value."""
        text = text.strip()
        try:
            if '/' in text:
                if self.kind != 'rat':
                    raise ValueError(f"Fractions need rational mode, ring is {self.label}")
                return self.normalize(Fraction(text))
            return self.normalize(int(text))
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Invalid coefficient '{text}': {str(e)}") from e

    def check_same(self, other):
        if self != other:
            raise RingMismatchError(f"Ring mode mismatch: {self.label} vs {other.label}")

    @classmethod
    def from_label(cls, label):
        """Build a ring from 'int', 'rat' or 'mod:N'."""
        label = label.strip()
        if label in ('int', 'rat'):
            return cls(label)
        if label.startswith('mod:'):
            try:
                return cls('mod', int(label[4:]))
            except ValueError:
                raise ValueError(f"Invalid modulus in ring '{label}'")
        raise ValueError(f"Unsupported ring mode: {label}")

    def __str__(self):
        return self.label


INTEGER = Ring('int')
RATIONAL = Ring('rat')


def modular(modulus):
    return Ring('mod', modulus)


@dataclass(frozen=True)
class Coefficient:
    """An exact value tagged with its ring mode."""
    value: object
    ring: Ring = INTEGER

    def __post_init__(self):
        object.__setattr__(self, 'value', self.ring.normalize(self.value))

    def __add__(self, other):
        return ring_add(self, other)

    def __mul__(self, other):
        return ring_mul(self, other)

    def __neg__(self):
        return Coefficient(self.ring.neg(self.value), self.ring)

    def __sub__(self, other):
        return ring_add(self, -other)

    def is_zero(self):
        return self.value == 0

    def __str__(self):
        return self.ring.render(self.value)


def ring_add(a, b):
    """
    Exact sum of two coefficients of the same ring mode.

    Raises:
        RingMismatchError: if the ring modes differ
    """
    a.ring.check_same(b.ring)
    return Coefficient(a.ring.add(a.value, b.value), a.ring)


def ring_mul(a, b):
    """
    Exact product of two coefficients of the same ring mode.

    Raises:
        RingMismatchError: if the ring modes differ
    """
    a.ring.check_same(b.ring)
    return Coefficient(a.ring.mul(a.value, b.value), a.ring)
