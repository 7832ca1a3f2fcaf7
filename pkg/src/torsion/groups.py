"""Finite abelian groups of rank at most two, written C_n x C_m with n | m."""

import re
from dataclasses import dataclass
from typing import Iterable

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import factorint

from src.core.curve import Curve, Point
from src.errors import DomainError, InconsistencyError
from src.fields.tower import TowerField

_GROUP_PATTERN = re.compile(r"^\s*C?(\d+)\s*(?:[xX×]\s*C?(\d+))?\s*$")


class GroupStructure(BaseModel):
    """C_n x C_m; cyclic groups have n = 1."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(default=1, ge=1)
    m: int = Field(ge=1)

    @model_validator(mode="after")
    def check_divides(self):
        if self.m % self.n:
            raise ValueError(f"n must divide m, got n={self.n}, m={self.m}")
        return self

    @classmethod
    def cyclic(cls, m: int) -> "GroupStructure":
        return cls(n=1, m=m)

    @classmethod
    def of(cls, n: int, m: int) -> "GroupStructure":
        return cls(n=n, m=m)

    @classmethod
    def parse(cls, text: str) -> "GroupStructure":
        """Accepts ``7``, ``C7``, ``2x8``, ``C2xC8`` and ``C2×C8``."""
        match = _GROUP_PATTERN.match(str(text))
        if not match:
            raise DomainError(f"Not a group structure: {text!r}")
        first, second = int(match.group(1)), match.group(2)
        try:
            if second is None:
                return cls.cyclic(first)
            return cls(n=first, m=int(second))
        except ValueError as e:
            raise DomainError(f"Not a group structure: {text!r}") from e

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> "GroupStructure":
        """Invariant factors of a direct sum of cyclic groups of the given orders."""
        exponents: dict[int, list[int]] = {}
        for order in orders:
            for p, e in factorint(order).items():
                exponents.setdefault(p, []).append(e)
        n = m = 1
        for p, es in exponents.items():
            es.sort(reverse=True)
            if len(es) > 2:
                raise DomainError(f"Rank of the {p}-part exceeds two")
            m *= p ** es[0]
            if len(es) == 2:
                n *= p ** es[1]
        return cls(n=n, m=m)

    @property
    def order(self) -> int:
        return self.n * self.m

    @property
    def is_cyclic(self) -> bool:
        return self.n == 1

    @property
    def exponent(self) -> int:
        return self.m

    def embeds_in(self, other: "GroupStructure") -> bool:
        return other.n % self.n == 0 and other.m % self.m == 0

    def two_part(self) -> "GroupStructure":
        return GroupStructure(n=_two_power(self.n), m=_two_power(self.m))

    def odd_part(self) -> "GroupStructure":
        return GroupStructure(n=self.n // _two_power(self.n), m=self.m // _two_power(self.m))

    def sort_key(self) -> tuple[int, int]:
        return self.n, self.m

    @property
    def code(self) -> str:
        """The ``nxm`` form used in data files."""
        return f"{self.n}x{self.m}"

    def __str__(self):
        if self.is_cyclic:
            return f"C{self.m}"
        return f"C{self.n}xC{self.m}"


def _two_power(k: int) -> int:
    return k & -k


def sorted_groups(groups: Iterable[GroupStructure]) -> list[GroupStructure]:
    return sorted(groups, key=GroupStructure.sort_key)


@dataclass(frozen=True)
class TorsionData:
    """
    A torsion subgroup over a field with generators on a fixed model.

    ``generators`` is ``(g1, g2)`` with orders (n, m) for non-cyclic groups
    and ``(g,)`` of order m otherwise; the trivial group has none.
    """

    curve: Curve
    field: TowerField
    structure: GroupStructure
    generators: tuple[Point, ...]

    def elements(self) -> set[Point]:
        E, F = self.curve, self.field
        if not self.generators:
            return {Point(F)}
        if len(self.generators) == 1:
            g1, g2, n = Point(F), self.generators[0], 1
        else:
            g1, g2 = self.generators
            n = self.structure.n
        out = set()
        row = Point(F)
        for _ in range(n):
            P = row
            for _ in range(self.structure.m):
                out.add(P)
                P = E.add(P, g2)
            row = E.add(row, g1)
        return out

    def check(self, enumerate_limit: int = 64) -> None:
        """Verify generator orders and, for small groups, the element count."""
        E, S = self.curve, self.structure
        expected = () if S.order == 1 else ((S.m,) if S.is_cyclic else (S.n, S.m))
        orders = tuple(E.order(g, cap=S.m) for g in self.generators)
        if orders != expected:
            raise InconsistencyError(
                f"Generators of {S} over {self.field} have orders {orders}"
            )
        for g in self.generators:
            if not E.contains(g) or g.field != self.field:
                raise InconsistencyError(f"Generator {g} is not on {E} over {self.field}")
        if S.order <= enumerate_limit and len(self.elements()) != S.order:
            raise InconsistencyError(f"Generators do not span a group of order {S.order}")
