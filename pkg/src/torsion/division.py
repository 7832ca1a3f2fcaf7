"""
Division polynomials of a Weierstrass curve.

psi_n has odd index polynomials in x; for even n only psi_n / psi_2 is a
polynomial in x, so the cache stores that quotient and multiplies through
by F = psi_2^2 = 4x^3 + b2*x^2 + 2*b4*x + b6 where the recurrence needs it.
"""

from functools import lru_cache

from src.core.curve import Curve
from src.errors import DomainError
from src.fields.polynomial import Polynomial

MAX_INDEX = 64


class DivisionPolynomials:
    """Lazily computed psi_n (odd n) and psi_n / psi_2 (even n) for one curve."""

    def __init__(self, curve: Curve):
        self._curve = curve
        self._cache: dict[int, Polynomial] = {}
        self._initcache()

    def _initcache(self):
        E = self._curve
        b2, b4, b6, b8 = E.b2, E.b4, E.b6, E.b8
        self._two = E.two_division_cubic()
        self._two_squared = self._two * self._two
        self._cache[0] = Polynomial(())
        self._cache[1] = Polynomial.of(1)
        self._cache[2] = Polynomial.of(1)
        self._cache[3] = Polynomial.of(b8, 3 * b6, 3 * b4, b2, 3)
        self._cache[4] = Polynomial.of(
            b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2
        )

    @property
    def curve(self) -> Curve:
        return self._curve

    def __getitem__(self, index: int) -> Polynomial:
        if index < 0 or index > MAX_INDEX:
            raise DomainError(f"Division polynomial index must be in 0..{MAX_INDEX}")
        if index not in self._cache:
            m = index // 2
            F2 = self._two_squared
            if index % 2:
                if m % 2 == 0:
                    result = F2 * self[m + 2] * self[m] ** 3 - self[m - 1] * self[m + 1] ** 3
                else:
                    result = self[m + 2] * self[m] ** 3 - F2 * self[m - 1] * self[m + 1] ** 3
            else:
                # psi_2 cancels for both parities of m under this storage
                result = self[m] * (
                    self[m + 2] * self[m - 1] ** 2 - self[m - 2] * self[m + 1] ** 2
                )
            self._cache[index] = result
        return self._cache[index]

    def x_polynomial(self, n: int) -> Polynomial:
        """Polynomial whose roots are the x(P) with nP = O, P != O."""
        if n < 1:
            raise DomainError(f"n must be positive, got {n}")
        if n % 2:
            return self[n]
        return self._two * self[n]

    def __str__(self):
        return f"DivisionPolynomials<{self._curve}, {len(self._cache)} cached>"


@lru_cache(maxsize=256)
def division_polynomials(E: Curve) -> DivisionPolynomials:
    return DivisionPolynomials(E)


def division_polynomial(E: Curve, n: int) -> Polynomial:
    """psi_n for odd n, and psi_n * psi_2 (a polynomial in x) for even n."""
    return division_polynomials(E).x_polynomial(n)
