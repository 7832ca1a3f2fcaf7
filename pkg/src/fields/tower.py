"""
Multiquadratic fields Q(sqrt(d1), ..., sqrt(dk)) with exact arithmetic.

An element is stored as 2^k rational coordinates with respect to the basis
``prod(sqrt(d_i) for i in S)``, one coordinate per subset S of the
generators. Subsets are bitmasks: bit i stands for ``generators[i]``, so the
last generator owns the high bit and ``coords[:half]`` is the subfield
without it.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Union

from src.config import get_config
from src.errors import DependentGeneratorError, DomainError
from src.fields.rationals import (
    Rational,
    as_fraction,
    is_squarefree,
    label_sort_key,
    rational_sqrt,
)

Scalar = Union[int, Fraction]


def _label_product(a: int, b: int) -> int:
    """Squarefree part of a*b for squarefree a, b."""
    g = gcd(a, b)
    return (a // g) * (b // g)


@dataclass(frozen=True, eq=False)
class TowerField:
    """A multiquadratic field given by independent squarefree generators."""

    generators: tuple[int, ...]
    products: tuple[int, ...] = field(init=False, repr=False)
    labels: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        products = [1]
        labels = [1]
        for d in self.generators:
            products += [p * d for p in products]
            labels += [_label_product(lab, d) for lab in labels]
        object.__setattr__(self, "products", tuple(products))
        object.__setattr__(self, "labels", tuple(labels))

    @classmethod
    def of(cls, *generators: int) -> "TowerField":
        """Build the field, sorting generators by |d| then sign."""
        gens = tuple(sorted(generators, key=label_sort_key))
        limit = get_config().max_tower_generators
        if len(gens) > limit:
            raise DomainError(
                f"Towers are limited to {limit} generators, got {len(gens)}"
            )
        seen = {1}
        for d in gens:
            if d == 1 or not is_squarefree(d):
                raise DomainError(f"Tower generator must be squarefree and != 1: {d}")
            if d in seen:
                raise DependentGeneratorError(
                    f"Generator {d} is dependent on {[g for g in gens if g != d]}"
                )
            seen |= {_label_product(s, d) for s in seen}
        return _tower(gens)

    def __eq__(self, other):
        return isinstance(other, TowerField) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __str__(self):
        if not self.generators:
            return "Q"
        return "Q(" + ", ".join(f"sqrt({d})" for d in self.generators) + ")"

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def degree(self) -> int:
        return 1 << self.rank

    def quadratic_subfields(self) -> list[int]:
        """Labels of all quadratic subfields, in canonical order."""
        return sorted(set(self.labels) - {1}, key=label_sort_key)

    def contains_label(self, d: int) -> bool:
        return d in self.labels

    def subfield(self) -> "TowerField":
        """The field generated by all but the last generator."""
        if not self.generators:
            raise DomainError("Q has no proper subfield")
        return _tower(self.generators[:-1])

    def adjoin(self, d: int) -> "TowerField":
        return TowerField.of(*self.generators, d)

    def element(self, coords: Iterable[Rational]) -> "TowerElement":
        coords = tuple(as_fraction(c) for c in coords)
        if len(coords) != self.degree:
            raise DomainError(
                f"{self} needs {self.degree} coordinates, got {len(coords)}"
            )
        return TowerElement(self, coords)

    def scalar(self, r: Rational) -> "TowerElement":
        return TowerElement(self, (as_fraction(r),) + (Fraction(0),) * (self.degree - 1))

    def zero(self) -> "TowerElement":
        return self.scalar(0)

    def one(self) -> "TowerElement":
        return self.scalar(1)

    def basis_element(self, mask: int) -> "TowerElement":
        coords = [Fraction(0)] * self.degree
        coords[mask] = Fraction(1)
        return TowerElement(self, tuple(coords))

    def sqrt_of_label(self, d: int) -> "TowerElement":
        """A fixed square root of the squarefree integer d inside the field."""
        if d == 1:
            return self.one()
        for mask, label in enumerate(self.labels):
            if label == d:
                # beta_S**2 = products[S] = d * q**2
                q = rational_sqrt(Fraction(self.products[mask], d))
                return self.basis_element(mask) * (1 / q)
        raise DomainError(f"sqrt({d}) does not lie in {self}")

    def coerce(self, value: Union["TowerElement", Scalar]) -> "TowerElement":
        if isinstance(value, TowerElement):
            if value.field == self:
                return value
            return value.promote(self)
        return self.scalar(value)

    def join(self, a: "TowerElement", b: "TowerElement") -> "TowerElement":
        """Build ``a + b*sqrt(d_last)`` from two elements of the subfield."""
        sub = self.subfield()
        a, b = sub.coerce(a), sub.coerce(b)
        return TowerElement(self, a.coords + b.coords)

    def _multiply(self, x: tuple, y: tuple) -> tuple:
        out = [Fraction(0)] * self.degree
        products = self.products
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    out[i ^ j] += xi * yj * products[i & j]
        return tuple(out)


@lru_cache(maxsize=None)
def _tower(generators: tuple[int, ...]) -> TowerField:
    return TowerField(generators)


QQ = _tower(())


@dataclass(frozen=True, eq=False)
class TowerElement:
    field: TowerField
    coords: tuple[Fraction, ...]

    def _other(self, other) -> Optional["TowerElement"]:
        if isinstance(other, TowerElement):
            if other.field != self.field:
                raise DomainError(
                    f"Cannot combine elements of {self.field} and {other.field}"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.scalar(other)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return TowerElement(
            self.field, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return TowerElement(self.field, tuple(a * other for a in self.coords))
        other = self._other(other)
        if other is None:
            return NotImplemented
        return TowerElement(self.field, self.field._multiply(self.coords, other.coords))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero in tower arithmetic")
            return self * (1 / Fraction(other))
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, TowerElement):
            if other.field == self.field:
                return self.coords == other.coords
            return self.is_rational() and other.is_rational() and (
                self.coords[0] == other.coords[0]
            )
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.field.generators, self.coords))

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        return f"TowerElement({self})"

    def __str__(self):
        terms = []
        for mask, c in enumerate(self.coords):
            if not c:
                continue
            radicals = "*".join(
                f"sqrt({d})" for i, d in enumerate(self.field.generators) if mask >> i & 1
            )
            if not radicals:
                terms.append(str(c))
            elif c == 1:
                terms.append(radicals)
            else:
                terms.append(f"{c}*{radicals}")
        return " + ".join(terms) if terms else "0"

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"{self} is not rational")
        return self.coords[0]

    def split(self) -> tuple["TowerElement", "TowerElement"]:
        """Write self as ``a + b*sqrt(d_last)`` with a, b in the subfield."""
        sub = self.field.subfield()
        half = sub.degree
        return TowerElement(sub, self.coords[:half]), TowerElement(sub, self.coords[half:])

    def inverse(self) -> "TowerElement":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        if self.is_rational():
            return self.field.scalar(1 / self.coords[0])
        a, b = self.split()
        d = self.field.generators[-1]
        norm = a * a - b * b * d
        inv = norm.inverse()
        return self.field.join(a * inv, -b * inv)

    def promote(self, target: TowerField) -> "TowerElement":
        """Embed into a field whose generators include ours."""
        if target == self.field:
            return self
        try:
            positions = [target.generators.index(d) for d in self.field.generators]
        except ValueError as e:
            raise DomainError(f"{self.field} is not a subfield of {target}") from e
        coords = [Fraction(0)] * target.degree
        for mask, c in enumerate(self.coords):
            if c:
                coords[sum(1 << p for i, p in enumerate(positions) if mask >> i & 1)] = c
        return TowerElement(target, tuple(coords))

    def restrict(self, target: TowerField) -> Optional["TowerElement"]:
        """The same element viewed in a subfield, or None if it is not there."""
        if target == self.field:
            return self
        try:
            positions = [self.field.generators.index(d) for d in target.generators]
        except ValueError as e:
            raise DomainError(f"{target} is not a subfield of {self.field}") from e
        coords = [Fraction(0)] * target.degree
        masks = {}
        for mask in range(target.degree):
            masks[sum(1 << p for i, p in enumerate(positions) if mask >> i & 1)] = mask
        for mask, c in enumerate(self.coords):
            if not c:
                continue
            if mask not in masks:
                return None
            coords[masks[mask]] = c
        return TowerElement(target, tuple(coords))


def _rational_sqrt_in(r: Fraction, F: TowerField) -> Optional[TowerElement]:
    # r is a square in F iff r / beta_S**2 is a rational square for some S
    for mask, prod in enumerate(F.products):
        q = rational_sqrt(r / prod)
        if q is not None:
            return F.basis_element(mask) * q
    return None


def is_square_with_witness(
    x: Union[TowerElement, Scalar], F: Optional[TowerField] = None
) -> Optional[TowerElement]:
    """
    Return w in F with w*w == x, or None when x is not a square in F.

    Writing x = a + b*sqrt(d) over the subfield L, a root u + v*sqrt(d)
    needs u**2 = (a +/- n)/2 where n**2 = a**2 - d*b**2, so the test descends
    to L until it reaches rational square roots.
    """
    if F is None:
        if not isinstance(x, TowerElement):
            raise DomainError("A field is required for rational input")
        F = x.field
    x = F.coerce(x)
    if x.is_rational():
        return _rational_sqrt_in(x.coords[0], F)

    L = F.subfield()
    d = F.generators[-1]
    a, b = x.split()
    n = is_square_with_witness(a * a - b * b * d, L)
    if n is None:
        return None
    for candidate in ((a + n) / 2, (a - n) / 2):
        u = is_square_with_witness(candidate, L)
        if u is None:
            continue
        if u.is_zero():
            if not b.is_zero():
                continue
            v = is_square_with_witness(a / d, L)
            if v is None:
                continue
        else:
            v = b / (2 * u)
        w = F.join(u, v)
        if w * w == x:
            return w
    return None
