"""Exact rational and quadratic-surd arithmetic for closed-form eigenvalues"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from sympy import factorint

from utils.errors import InvalidParameterError, UnsupportedError

Rational = Union[int, Fraction]


def square_free_decompose(k: int) -> Tuple[int, int]:
    """
    Split a positive integer as k = x²·Δ with Δ square-free

    Returns:
        (x, Δ); Δ == 1 exactly when k is a perfect square
    """
    if isinstance(k, bool) or not isinstance(k, int) or k <= 0:
        raise InvalidParameterError(f"square_free_decompose needs a positive integer, got {k!r}")

    outer, radicand = 1, 1
    for prime, exponent in factorint(k).items():
        outer *= prime ** (exponent // 2)
        if exponent % 2:
            radicand *= prime
    return outer, radicand


@dataclass(frozen=True)
class ExactScalar:
    """
    a + b·√Δ with rational a, b and square-free Δ ≥ 1

    Normalised on construction: a perfect-square factor of Δ moves into b, and a zero
    surd part forces Δ = 1, so equal numbers compare equal field by field.
    """
    rational: Fraction
    surd: Fraction = Fraction(0)
    radicand: int = 1

    def __post_init__(self):
        if isinstance(self.radicand, bool) or not isinstance(self.radicand, int) or self.radicand < 1:
            raise InvalidParameterError(f"Radicand must be a positive integer, got {self.radicand!r}")

        rational = Fraction(self.rational)
        surd = Fraction(self.surd)
        radicand = self.radicand
        if surd != 0:
            outer, radicand = square_free_decompose(radicand)
            surd *= outer
            if radicand == 1:
                rational += surd
                surd = Fraction(0)
        if surd == 0:
            radicand = 1

        object.__setattr__(self, "rational", rational)
        object.__setattr__(self, "surd", surd)
        object.__setattr__(self, "radicand", radicand)

    @classmethod
    def from_half_form(cls, x: int, y: int, delta: int) -> "ExactScalar":
        """(x + y·√Δ) / 2"""
        return cls(Fraction(x, 2), Fraction(y, 2), delta)

    @property
    def is_rational(self) -> bool:
        return self.surd == 0

    @property
    def is_integer(self) -> bool:
        return self.is_rational and self.rational.denominator == 1

    @property
    def half_form(self) -> Optional[Tuple[int, int, int]]:
        """(x, y, Δ) with value (x + y√Δ)/2 and integer x, y, or None"""
        x = 2 * self.rational
        y = 2 * self.surd
        if x.denominator != 1 or y.denominator != 1:
            return None
        return int(x), int(y), self.radicand

    @property
    def value(self) -> float:
        return float(self.rational) + float(self.surd) * math.sqrt(self.radicand)

    def __float__(self) -> float:
        return self.value

    def _coerce(self, other) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            other_value = other
        elif isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other_value = ExactScalar(Fraction(other))
        else:
            return NotImplemented
        if not (self.is_rational or other_value.is_rational or self.radicand == other_value.radicand):
            raise UnsupportedError(
                f"Cannot combine √{self.radicand} and √{other_value.radicand} in one quadratic field"
            )
        return other_value

    def _field(self, other: "ExactScalar") -> int:
        return other.radicand if self.is_rational else self.radicand

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExactScalar(self.rational + other.rational, self.surd + other.surd, self._field(other))

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.rational, -self.surd, self.radicand)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        delta = self._field(other)
        return ExactScalar(
            self.rational * other.rational + self.surd * other.surd * delta,
            self.rational * other.surd + self.surd * other.rational,
            delta,
        )

    __rmul__ = __mul__

    def to_string(self) -> str:
        """Canonical text form: "5", "7/2" or "(9+1*sqrt(17))/2\""""
        if self.is_rational:
            return str(self.rational)
        form = self.half_form
        if form is not None:
            x, y, delta = form
            sign = "+" if y > 0 else "-"
            return f"({x}{sign}{abs(y)}*sqrt({delta}))/2"
        sign = "+" if self.surd > 0 else "-"
        return f"{self.rational}{sign}{abs(self.surd)}*sqrt({self.radicand})"

    def __str__(self) -> str:
        return self.to_string()


def exact_integer(value: Rational) -> ExactScalar:
    return ExactScalar(Fraction(value))
