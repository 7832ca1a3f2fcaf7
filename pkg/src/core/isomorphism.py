"""Changes of Weierstrass model over Q."""

from dataclasses import dataclass
from fractions import Fraction

from src.core.curve import Curve, Point
from src.errors import DomainError
from src.fields.rationals import Rational, as_fraction


@dataclass(frozen=True)
class Isomorphism:
    """
    The substitution ``x = u^2*x' + r``, ``y = u^3*y' + s*u^2*x' + t``.

    ``apply`` sends a curve E to the model E' in the primed coordinates and
    ``map_point`` sends points of E to points of E'.
    """

    u: Fraction
    r: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    t: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("u", "r", "s", "t"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.u == 0:
            raise DomainError("u must be nonzero")

    @classmethod
    def of(cls, u: Rational, r: Rational = 0, s: Rational = 0, t: Rational = 0):
        return cls(as_fraction(u), as_fraction(r), as_fraction(s), as_fraction(t))

    @classmethod
    def identity(cls) -> "Isomorphism":
        return cls(Fraction(1))

    def is_identity(self) -> bool:
        return self == Isomorphism.identity()

    def then(self, other: "Isomorphism") -> "Isomorphism":
        """Apply self, then other."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return Isomorphism(
            u1 * u2,
            r1 + u1 * u1 * r2,
            s1 + u1 * s2,
            t1 + u1**3 * t2 + s1 * u1 * u1 * r2,
        )

    def inverse(self) -> "Isomorphism":
        u, r, s, t = self.u, self.r, self.s, self.t
        return Isomorphism(1 / u, -r / u**2, -s / u, (r * s - t) / u**3)

    def apply(self, E: Curve) -> Curve:
        u, r, s, t = self.u, self.r, self.s, self.t
        a1, a2, a3, a4, a6 = E.coefficients
        return Curve(
            (a1 + 2 * s) / u,
            (a2 - s * a1 + 3 * r - s * s) / u**2,
            (a3 + r * a1 + 2 * t) / u**3,
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4,
            (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6,
        )

    def map_point(self, P: Point) -> Point:
        if P.is_infinity:
            return P
        u, r, s, t = self.u, self.r, self.s, self.t
        x = (P.x - r) / u**2
        y = (P.y - s * (P.x - r) - t) / u**3
        return Point(P.field, x, y)
