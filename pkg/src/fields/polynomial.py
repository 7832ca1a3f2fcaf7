"""Dense univariate polynomials over Q or over a tower field."""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable

from src.errors import DomainError
from src.fields.rationals import as_fraction
from src.fields.tower import TowerElement


def _is_zero(c) -> bool:
    return c == 0


@dataclass(frozen=True)
class Polynomial:
    """Coefficients in ascending order; trailing zeros are stripped."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = [
            c if isinstance(c, TowerElement) else as_fraction(c)
            for c in self.coefficients
        ]
        while coeffs and _is_zero(coeffs[-1]):
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def of(cls, *coefficients) -> "Polynomial":
        return cls(tuple(coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self):
        if not self.coefficients:
            raise DomainError("The zero polynomial has no leading coefficient")
        return self.coefficients[-1]

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return Fraction(0)

    def __len__(self):
        return len(self.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_rational(self) -> bool:
        return all(
            not isinstance(c, TowerElement) or c.is_rational()
            for c in self.coefficients
        )

    def to_rational(self) -> "Polynomial":
        if not self.is_rational():
            raise DomainError(f"{self} does not have rational coefficients")
        return Polynomial(
            tuple(
                c.rational() if isinstance(c, TowerElement) else c
                for c in self.coefficients
            )
        )

    def _other(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial((other,))

    def __add__(self, other):
        other = self._other(other)
        n = max(len(self), len(other))
        return Polynomial(tuple(self[i] + other[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(tuple(c * other for c in self.coefficients))
        if self.is_zero() or other.is_zero():
            return Polynomial(())
        out = [Fraction(0)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coefficients):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] = out[i + j] + a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Polynomial((1,))
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, divisor: "Polynomial"):
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coefficients)
        quotient = [Fraction(0)] * max(len(self) - len(divisor) + 1, 1)
        lead = divisor.leading
        while len(remainder) >= len(divisor) and remainder:
            shift = len(remainder) - len(divisor)
            factor = remainder[-1] / lead
            quotient[shift] = factor
            for i, c in enumerate(divisor.coefficients):
                remainder[shift + i] = remainder[shift + i] - factor * c
            remainder.pop()
            while remainder and _is_zero(remainder[-1]):
                remainder.pop()
        return Polynomial(tuple(quotient)), Polynomial(tuple(remainder))

    def __floordiv__(self, divisor: "Polynomial"):
        return divmod(self, divisor)[0]

    def __mod__(self, divisor: "Polynomial"):
        return divmod(self, divisor)[1]

    def __call__(self, x):
        """Horner evaluation at a rational or tower element."""
        if self.is_zero():
            return Fraction(0)
        acc = self.coefficients[-1]
        for c in reversed(self.coefficients[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(i * c for i, c in enumerate(self.coefficients))[1:])

    def monic(self) -> "Polynomial":
        return self * (1 / self.leading)

    def shift(self, c) -> "Polynomial":
        """The polynomial p(x + c)."""
        result = Polynomial(())
        linear = Polynomial((c, 1))
        for coeff in reversed(self.coefficients):
            result = result * linear + coeff
        return result

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic gcd by the Euclidean algorithm."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a if a.is_zero() else a.monic()

    def integer_coefficients(self) -> list[int]:
        """Primitive integer multiple with positive leading coefficient."""
        p = self.to_rational()
        if p.is_zero():
            return []
        den = reduce(lcm, (c.denominator for c in p.coefficients), 1)
        ints = [int(c * den) for c in p.coefficients]
        content = reduce(gcd, ints)
        if ints[-1] < 0:
            content = -content
        return [c // content for c in ints]

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if _is_zero(c):
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if isinstance(c, TowerElement) and not c.is_rational():
                coeff = f"({c})"
            else:
                c = c.rational() if isinstance(c, TowerElement) else c
                coeff = str(c)
                if mono and c == 1:
                    coeff = ""
                elif mono and c == -1:
                    coeff = "-"
            terms.append(f"{coeff}{'*' if coeff not in ('', '-') and mono else ''}{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def linear(root) -> Polynomial:
    """The monic polynomial x - root."""
    return Polynomial((-root, 1))


def product(factors: Iterable[Polynomial]) -> Polynomial:
    return reduce(lambda a, b: a * b, factors, Polynomial((1,)))
