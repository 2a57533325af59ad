"""
Exact natural-number and rational arithmetic.

Python integers already are arbitrary precision, so a ``BigNat`` is simply a
non-negative ``int``. ``ExactRational`` keeps an unreduced numerator and
denominator and decides every comparison by cross-multiplication, so no
verdict ever goes through floating point.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import total_ordering

from src.errors import InvalidArgumentError, InvalidRationalError


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def big_pow(base, exp):
    """
    Return ``base ** exp`` for a natural base and a machine-size exponent.

    Parameters
    ----------
    base : int
        Non-negative integer.
    exp : int
        Non-negative exponent.

    Returns
    -------
    int
        ``base`` raised to ``exp``; ``big_pow(x, 0) == 1``.

    Raises
    ------
    InvalidArgumentError
        If either argument is negative or not an integer.
    """
    if not isinstance(base, int) or not isinstance(exp, int):
        raise InvalidArgumentError("big_pow expects integer base and exponent.")
    if base < 0 or exp < 0:
        raise InvalidArgumentError(f"big_pow expects naturals, got base={base}, exp={exp}.")
    return base**exp


@total_ordering
@dataclass(frozen=True, eq=False)
class ExactRational:
    """
    Non-negative rational ``num/den`` kept in whatever form it was built.

    Equality is value equality, so ``ExactRational(2, 3) == ExactRational(4, 6)``.
    """

    num: int
    den: int = 1

    def __post_init__(self):
        if not isinstance(self.num, int) or not isinstance(self.den, int):
            raise InvalidRationalError("numerator and denominator must be integers.")
        if self.den <= 0:
            raise InvalidRationalError(f"denominator must be positive, got {self.den}.")
        if self.num < 0:
            raise InvalidRationalError(f"numerator must be non-negative, got {self.num}.")

    @classmethod
    def from_value(cls, value):
        """Build from an int, a ``Fraction`` or an ``ExactRational``."""
        if isinstance(value, ExactRational):
            return value
        if isinstance(value, int):
            return cls(value, 1)
        if isinstance(value, Fraction):
            return cls(value.numerator, value.denominator)
        raise InvalidRationalError(f"cannot build an exact rational from {value!r}.")

    @classmethod
    def parse(cls, text):
        """Parse ``"a/b"`` or ``"a"``."""
        head, _, tail = text.strip().partition("/")
        try:
            return cls(int(head), int(tail) if tail else 1)
        except ValueError as exc:
            if isinstance(exc, InvalidRationalError):
                raise
            raise InvalidRationalError(f"not a rational: {text!r}.") from exc

    def __mul__(self, other):
        other = ExactRational.from_value(other)
        return ExactRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ExactRational.from_value(other)
        if other.num == 0:
            raise InvalidRationalError("division by zero.")
        return ExactRational(self.num * other.den, self.den * other.num)

    def __add__(self, other):
        other = ExactRational.from_value(other)
        return ExactRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __pow__(self, exp):
        return ExactRational(big_pow(self.num, exp), big_pow(self.den, exp))

    def __eq__(self, other):
        try:
            other = ExactRational.from_value(other)
        except InvalidRationalError:
            return NotImplemented
        return rational_cmp(self, other) is Ordering.EQUAL

    def __lt__(self, other):
        try:
            other = ExactRational.from_value(other)
        except InvalidRationalError:
            return NotImplemented
        return rational_cmp(self, other) is Ordering.LESS

    def __hash__(self):
        return hash(self.to_fraction())

    def to_fraction(self):
        return Fraction(self.num, self.den)

    def reduced(self):
        value = self.to_fraction()
        return ExactRational(value.numerator, value.denominator)

    def approx(self):
        """Floating-point approximation, for human-readable report fields only."""
        return float(self.to_fraction())

    def __str__(self):
        value = self.reduced()
        return f"{value.num}/{value.den}"


def rational_cmp(a, b):
    """
    Order two exact rationals by comparing ``a.num * b.den`` with ``b.num * a.den``.

    Parameters
    ----------
    a, b : ExactRational

    Returns
    -------
    Ordering
        LESS, EQUAL or GREATER.

    Raises
    ------
    InvalidRationalError
        If either denominator is zero.
    """
    if a.den == 0 or b.den == 0:
        raise InvalidRationalError("zero denominator in comparison.")
    left = a.num * b.den
    right = b.num * a.den
    if left < right:
        return Ordering.LESS
    if left > right:
        return Ordering.GREATER
    return Ordering.EQUAL


def int_le_rational(value, bound):
    """``value <= bound`` for an integer and an exact rational."""
    return value * bound.den <= bound.num


def int_ge_rational(value, bound):
    """``value >= bound`` for an integer and an exact rational."""
    return value * bound.den >= bound.num
