from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from zxheur.phase import Phase

fractions = st.fractions(min_value=-8, max_value=8, max_denominator=16)


def test_canonical_range():
    assert Phase(Fraction(-1, 2)) == Phase(Fraction(3, 2))
    assert Phase(2) == Phase(0)
    assert Phase(5) == Phase(1)
    assert Phase(Fraction(-1, 2)).signed() == Fraction(-1, 2)


def test_predicates():
    assert Phase(0).is_pauli() and Phase(1).is_pauli()
    assert Phase(Fraction(1, 2)).is_proper_clifford()
    assert Phase(Fraction(3, 2)).is_proper_clifford()
    assert not Phase(1).is_proper_clifford()
    assert Phase(Fraction(1, 4)).is_non_clifford()
    assert not Phase(Fraction(1, 2)).is_non_clifford()
    assert Phase(Fraction(1, 2)).is_clifford() and Phase(1).is_clifford()


@given(fractions, fractions)
def test_addition_is_modulo_two(a, b):
    assert (Phase(a) + Phase(b)).fraction == (a + b) % 2
    assert (Phase(a) - Phase(a)).is_zero()
    assert -Phase(a) + Phase(a) == 0


@given(fractions)
def test_value_in_half_open_interval(a):
    p = Phase(a)
    assert 0 <= p.fraction < 2
    assert -1 < p.signed() <= 1
    assert Phase(p.signed()) == p
