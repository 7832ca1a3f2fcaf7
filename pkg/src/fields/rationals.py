"""Rational helpers: squarefree parts, exact square roots and parsing."""

from fractions import Fraction
from math import isqrt
from typing import Annotated, Optional, Union

from pydantic import AfterValidator
from sympy import factorint

from src.errors import DomainError

Rational = Union[int, Fraction]


def as_fraction(value: Rational | str) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-75/4"`` to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError(f"Not a rational number: {value!r}")
    if isinstance(value, (int, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise DomainError(f"Not a rational number: {value!r}") from e
    raise DomainError(f"Not a rational number: {value!r}")


def _squarefree_integer(n: int) -> tuple[int, int]:
    """Split a nonzero integer as ``n = d * s**2`` with d squarefree, s > 0."""
    sign = -1 if n < 0 else 1
    d, s = 1, 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            d *= p
        s *= p ** (e // 2)
    return sign * d, s


def squarefree_part(r: Rational) -> tuple[int, Fraction]:
    """
    Return ``(d, q)`` with ``r = d * q**2``, d a squarefree integer and q > 0.

    Examples: 12 -> (3, 2); -75/4 -> (-3, 5/2); 1 -> (1, 1).
    """
    r = as_fraction(r)
    if r == 0:
        raise DomainError("squarefree_part is undefined at 0")
    # n/m = n*m / m**2
    d, s = _squarefree_integer(r.numerator * r.denominator)
    return d, Fraction(s, r.denominator)


def squarefree_label(r: Rational) -> int:
    """Squarefree integer d with r in d * Q^2."""
    return squarefree_part(r)[0]


def is_squarefree(d: int) -> bool:
    if d == 0:
        return False
    return all(e == 1 for e in factorint(abs(d)).values())


def rational_sqrt(r: Rational) -> Optional[Fraction]:
    """Non-negative square root of r when it is rational, else None."""
    r = as_fraction(r)
    if r < 0:
        return None
    num, den = isqrt(r.numerator), isqrt(r.denominator)
    if num * num == r.numerator and den * den == r.denominator:
        return Fraction(num, den)
    return None


def _check_label(d: int) -> int:
    if not is_squarefree(d):
        raise ValueError(f"{d} is not a nonzero squarefree integer")
    return d


SquarefreeLabel = Annotated[int, AfterValidator(_check_label)]


def format_rational(r: Rational) -> str:
    r = as_fraction(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def label_sort_key(d: int) -> tuple[int, int]:
    """Ascending |d|, negative before positive."""
    return abs(d), d
