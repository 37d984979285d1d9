from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from utils.coefficients import (
    Coefficient, INTEGER, RATIONAL, Ring, RingMismatchError, modular, ring_add, ring_mul,
)

rings = st.sampled_from([INTEGER, RATIONAL, modular(2), modular(7), modular(12)])


def test_modular_addition_wraps():
    ring = modular(7)
    assert ring_add(Coefficient(5, ring), Coefficient(4, ring)) == Coefficient(2, ring)
    assert Coefficient(-1, ring).value == 6


def test_rational_arithmetic_is_exact():
    total = ring_add(Coefficient(Fraction(1, 2), RATIONAL), Coefficient(Fraction(1, 3), RATIONAL))
    assert total.value == Fraction(5, 6)
    assert str(total) == '5/6'


def test_ring_mismatch_is_rejected():
    with pytest.raises(RingMismatchError):
        ring_add(Coefficient(1, INTEGER), Coefficient(1, modular(5)))
    with pytest.raises(RingMismatchError):
        ring_mul(Coefficient(1, RATIONAL), Coefficient(1, INTEGER))


def test_inexact_values_are_rejected():
    with pytest.raises(ValueError):
        INTEGER.normalize(0.5)
    with pytest.raises(ValueError):
        INTEGER.normalize(Fraction(1, 2))
    with pytest.raises(ValueError):
        INTEGER.parse('1/2')


def test_ring_labels_round_trip():
    assert Ring.from_label('int') == INTEGER
    assert Ring.from_label('rat') == RATIONAL
    assert Ring.from_label('mod:5') == modular(5)
    assert modular(5).label == 'mod:5'


@pytest.mark.parametrize('label', ['mod:1', 'mod:0', 'mod:x', 'real', ''])
def test_bad_ring_labels(label):
    with pytest.raises(ValueError):
        Ring.from_label(label)


def test_parse_values():
    assert RATIONAL.parse('-3/6') == Fraction(-1, 2)
    assert modular(5).parse('-3') == 2
    assert INTEGER.parse(' 42 ') == 42
    with pytest.raises(ValueError):
        INTEGER.parse('abc')


@given(rings, st.integers(-100, 100), st.integers(-100, 100), st.integers(-100, 100))
def test_ring_laws(ring, a, b, c):
    a, b, c = (Coefficient(x, ring) for x in (a, b, c))
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@given(st.integers(2, 60), st.integers(-1000, 1000))
def test_modular_values_stay_reduced(modulus, value):
    ring = modular(modulus)
    assert 0 <= ring.normalize(value) < modulus
