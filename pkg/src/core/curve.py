"""
Weierstrass curves over Q and the group law on their points over towers.

A curve is ``y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6`` with rational
coefficients. Points carry the multiquadratic field their coordinates live
in; the point at infinity is a point with no coordinates.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from src.errors import DomainError, SingularCurveError
from src.fields.polynomial import Polynomial
from src.fields.rationals import Rational, as_fraction, format_rational
from src.fields.tower import QQ, TowerElement, TowerField

Coordinate = Union[TowerElement, Rational]


@dataclass(frozen=True)
class Point:
    """An affine point, or the point at infinity when ``x`` is None."""

    field: TowerField
    x: Optional[TowerElement] = None
    y: Optional[TowerElement] = None

    @classmethod
    def infinity(cls, F: TowerField = QQ) -> "Point":
        return cls(F)

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def is_rational(self) -> bool:
        return self.is_infinity or (self.x.is_rational() and self.y.is_rational())

    def promote(self, F: TowerField) -> "Point":
        if F == self.field:
            return self
        if self.is_infinity:
            return Point(F)
        return Point(F, self.x.promote(F), self.y.promote(F))

    def restrict(self, F: TowerField) -> Optional["Point"]:
        """The same point over a subfield F, or None if it is not defined there."""
        if F == self.field:
            return self
        if self.is_infinity:
            return Point(F)
        x, y = self.x.restrict(F), self.y.restrict(F)
        if x is None or y is None:
            return None
        return Point(F, x, y)

    def sort_key(self) -> tuple:
        if self.is_infinity:
            return (0,)
        return (1, self.x.coords, self.y.coords)

    def __str__(self):
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


@dataclass(frozen=True)
class Curve:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction
    b2: Fraction = field(init=False, repr=False, compare=False)
    b4: Fraction = field(init=False, repr=False, compare=False)
    b6: Fraction = field(init=False, repr=False, compare=False)
    b8: Fraction = field(init=False, repr=False, compare=False)
    c4: Fraction = field(init=False, repr=False, compare=False)
    c6: Fraction = field(init=False, repr=False, compare=False)
    discriminant: Fraction = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        a1, a2, a3, a4, a6 = self.coefficients
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        c4 = b2 * b2 - 24 * b4
        c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
        disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        if disc == 0:
            raise SingularCurveError(f"Singular model {list(map(str, self.coefficients))}")
        for name, value in (
            ("b2", b2),
            ("b4", b4),
            ("b6", b6),
            ("b8", b8),
            ("c4", c4),
            ("c6", c6),
            ("discriminant", disc),
        ):
            object.__setattr__(self, name, value)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def j_invariant(self) -> Fraction:
        return self.c4**3 / self.discriminant

    @property
    def is_b_form(self) -> bool:
        return self.a1 == 0 and self.a3 == 0

    @property
    def is_short(self) -> bool:
        return self.is_b_form and self.a2 == 0

    def cubic(self) -> Polynomial:
        """x^3 + a2*x^2 + a4*x + a6."""
        return Polynomial.of(self.a6, self.a4, self.a2, 1)

    def two_division_cubic(self) -> Polynomial:
        """4x^3 + b2*x^2 + 2*b4*x + b6, which is (2y + a1*x + a3)^2 on the curve."""
        return Polynomial.of(self.b6, 2 * self.b4, self.b2, 4)

    def point(self, x: Coordinate, y: Coordinate, F: Optional[TowerField] = None) -> Point:
        """Build an affine point, checking that it lies on the curve."""
        if F is None:
            F = x.field if isinstance(x, TowerElement) else QQ
        P = Point(F, _coerce(F, x), _coerce(F, y))
        if not self.contains(P):
            raise DomainError(f"{P} does not lie on {self}")
        return P

    def contains(self, P: Point) -> bool:
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x * x * x + self.a2 * x * x + self.a4 * x + self.a6
        return lhs == rhs

    def neg(self, P: Point) -> Point:
        if P.is_infinity:
            return P
        return Point(P.field, P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P: Point, Q: Point) -> Point:
        if P.field != Q.field:
            raise DomainError(f"Points over {P.field} and {Q.field} cannot be added")
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        a1, a2, a3, a4, a6 = self.coefficients
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if (y1 + y2 + a1 * x2 + a3).is_zero():
                return Point(P.field)
            denom = 2 * y1 + a1 * x1 + a3
            slope = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / denom
            intercept = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / denom
        else:
            slope = (y2 - y1) / (x2 - x1)
            intercept = (y1 * x2 - y2 * x1) / (x2 - x1)
        x3 = slope * slope + a1 * slope - a2 - x1 - x2
        y3 = -(slope + a1) * x3 - intercept - a3
        return Point(P.field, x3, y3)

    def double(self, P: Point) -> Point:
        return self.add(P, P)

    def multiply(self, n: int, P: Point) -> Point:
        """n*P by double-and-add."""
        if n < 0:
            return self.multiply(-n, self.neg(P))
        result, addend = Point(P.field), P
        while n:
            if n & 1:
                result = self.add(result, addend)
            addend = self.double(addend)
            n >>= 1
        return result

    def order(self, P: Point, cap: int = 16) -> Optional[int]:
        """Order of P when it is at most ``cap``, else None."""
        Q = P
        for k in range(1, cap + 1):
            if Q.is_infinity:
                return k
            Q = self.add(Q, P)
        return None

    def __str__(self):
        a1, a2, a3, a4, a6 = self.coefficients
        lhs = "y^2" + _term(a1, "x*y") + _term(a3, "y")
        rhs = "x^3" + _term(a2, "x^2") + _term(a4, "x") + _term(a6, "")
        return f"{lhs} = {rhs}"

    def coefficient_string(self) -> str:
        return "[" + ",".join(format_rational(a) for a in self.coefficients) + "]"


def _coerce(F: TowerField, value: Coordinate) -> TowerElement:
    return F.coerce(value if isinstance(value, TowerElement) else as_fraction(value))


def _term(c: Fraction, mono: str) -> str:
    if c == 0:
        return ""
    sign = " - " if c < 0 else " + "
    c = abs(c)
    if mono and c == 1:
        return f"{sign}{mono}"
    return f"{sign}{format_rational(c)}{'*' + mono if mono else ''}"


def new_curve(a1: Rational, a2: Rational, a3: Rational, a4: Rational, a6: Rational) -> Curve:
    """Validate the coefficients and build the curve; singular models raise."""
    return Curve(*(as_fraction(a) for a in (a1, a2, a3, a4, a6)))


def point_add(E: Curve, P: Point, Q: Point) -> Point:
    return E.add(P, Q)


def point_neg(E: Curve, P: Point) -> Point:
    return E.neg(P)


def scalar_mul(E: Curve, n: int, P: Point) -> Point:
    return E.multiply(n, P)
