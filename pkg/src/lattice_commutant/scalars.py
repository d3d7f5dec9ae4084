"""Exact scalars and half-integer mode indices.

Every coefficient in this package is an element of ``Q``.  When gmpy2 is
installed ``Q`` is :class:`gmpy2.mpq`, otherwise :class:`fractions.Fraction`;
both hash and compare identically, so callers may mix them with plain
``Fraction`` values freely.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

try:  # pragma: no cover - depends on the environment
    from gmpy2 import mpq as Q
    BACKEND = "gmpy2"
except ImportError:  # pragma: no cover
    Q = Fraction
    BACKEND = "fractions"

ZERO = Q(0)
ONE = Q(1)

ScalarLike = Union[int, Fraction, "Q", str]


def as_scalar(x: ScalarLike) -> "Q":
    """Coerce ints, Fractions, mpq values and ``"p/q"`` strings to ``Q``."""
    if isinstance(x, str):
        f = Fraction(x.strip())
        return Q(f.numerator, f.denominator)
    if isinstance(x, int):
        return Q(x)
    if isinstance(x, Fraction):
        return Q(x.numerator, x.denominator)
    if isinstance(x, Rational):
        return Q(int(x.numerator), int(x.denominator))
    if type(x) is Q:
        return x
    raise TypeError(f"not an exact rational: {x!r}")


def scalar_str(x) -> str:
    x = as_scalar(x)
    num, den = int(x.numerator), int(x.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


@dataclass(frozen=True, order=True)
class HalfInt:
    """An element of (1/2)Z, stored as twice its value."""

    doubled: int

    @classmethod
    def of(cls, x: Union["HalfInt", int, Fraction, str]) -> "HalfInt":
        if isinstance(x, HalfInt):
            return x
        if isinstance(x, int):
            return cls(2 * x)
        f = Fraction(x) if not isinstance(x, Fraction) else x
        d = 2 * f
        if d.denominator != 1:
            raise ValueError(f"{x!r} is not a half-integer")
        return cls(int(d))

    @property
    def value(self) -> Fraction:
        return Fraction(self.doubled, 2)

    @property
    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def __add__(self, other):
        return HalfInt(self.doubled + HalfInt.of(other).doubled)

    def __sub__(self, other):
        return HalfInt(self.doubled - HalfInt.of(other).doubled)

    def __neg__(self):
        return HalfInt(-self.doubled)

    def __str__(self) -> str:
        if self.doubled % 2 == 0:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


def doubled(m) -> int:
    """Twice a mode index given as HalfInt, int, Fraction or string."""
    return HalfInt.of(m).doubled
