"""Exact spider phases.

A :class:`Phase` is a rational multiple of pi stored as a reduced fraction
in the half-open interval [0, 2).  All rewrite logic compares phases with
exact equality, so no floating point ever enters a rule predicate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

PhaseLike = Union["Phase", Fraction, int, str]

_TWO = Fraction(2)


class Phase:
    """A phase ``numerator/denominator * pi`` canonicalised into [0, 2)."""

    __slots__ = ("_value",)

    def __init__(self, value: PhaseLike = 0, denominator: int | None = None) -> None:
        if isinstance(value, Phase):
            frac = value._value
        elif denominator is not None:
            frac = Fraction(int(value), int(denominator))
        else:
            frac = Fraction(value)
        self._value = frac % _TWO

    @property
    def numerator(self) -> int:
        return self._value.numerator

    @property
    def denominator(self) -> int:
        return self._value.denominator

    @property
    def fraction(self) -> Fraction:
        """The canonical value as a :class:`fractions.Fraction`."""
        return self._value

    def signed(self) -> Fraction:
        """The representative in (-1, 1], handy for printing ``-1/2`` instead of ``3/2``."""
        if self._value > 1:
            return self._value - 2
        return self._value

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self._value == 0

    def is_pauli(self) -> bool:
        """Multiple of pi (0 or pi)."""
        return self._value.denominator == 1

    def is_proper_clifford(self) -> bool:
        """Exactly pi/2 or -pi/2."""
        return self._value.denominator == 2

    def is_clifford(self) -> bool:
        """Multiple of pi/2."""
        return self._value.denominator <= 2

    def is_non_clifford(self) -> bool:
        return self._value.denominator > 2

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: PhaseLike) -> "Phase":
        return Phase(self._value + _as_fraction(other))

    __radd__ = __add__

    def __sub__(self, other: PhaseLike) -> "Phase":
        return Phase(self._value - _as_fraction(other))

    def __rsub__(self, other: PhaseLike) -> "Phase":
        return Phase(_as_fraction(other) - self._value)

    def __neg__(self) -> "Phase":
        return Phase(-self._value)

    def __mul__(self, k: int) -> "Phase":
        return Phase(self._value * k)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Phase):
            return self._value == other._value
        if isinstance(other, (int, Fraction)):
            return self._value == Fraction(other) % _TWO
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Phase", self._value))

    def __bool__(self) -> bool:
        return self._value != 0

    def __float__(self) -> float:
        return float(self._value)

    def __repr__(self) -> str:
        return f"Phase({self._value})"

    def __str__(self) -> str:
        v = self.signed()
        if v == 0:
            return "0"
        num, den = v.numerator, v.denominator
        head = "pi" if abs(num) == 1 else f"{abs(num)}*pi"
        sign = "-" if num < 0 else ""
        return f"{sign}{head}" if den == 1 else f"{sign}{head}/{den}"


def _as_fraction(x: PhaseLike) -> Fraction:
    if isinstance(x, Phase):
        return x._value
    return Fraction(x)


ZERO = Phase(0)
PI = Phase(1)
HALF_PI = Phase(Fraction(1, 2))
MINUS_HALF_PI = Phase(Fraction(3, 2))
