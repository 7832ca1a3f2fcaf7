"""Standard models of a curve and its quadratic twists."""

from fractions import Fraction

from src.core.curve import Curve, Point, new_curve
from src.core.isomorphism import Isomorphism
from src.errors import DomainError, InconsistencyError
from src.fields.rationals import is_squarefree
from src.fields.tower import TowerField


def to_b_form(E: Curve) -> tuple[Curve, Isomorphism]:
    """
    Complete the square: y^2 = x^3 + (b2/4)x^2 + (b4/2)x + b6/4.

    Returns the model and the isomorphism from E to it.
    """
    iso = Isomorphism(Fraction(1), Fraction(0), -E.a1 / 2, -E.a3 / 2)
    return iso.apply(E), iso


def to_short_form(E: Curve) -> tuple[Curve, Isomorphism]:
    """
    The model y^2 = x^3 - 27*c4*x - 54*c6, integral whenever E is.

    Curves already in short form are returned unchanged with the identity.
    """
    if E.is_short:
        return E, Isomorphism.identity()
    _, to_b = to_b_form(E)
    iso = to_b.then(Isomorphism(Fraction(1), -E.b2 / 12)).then(Isomorphism(Fraction(1, 6)))
    short = iso.apply(E)
    if not (short.is_short and short.a4 == -27 * E.c4 and short.a6 == -54 * E.c6):
        raise InconsistencyError(f"Short model of {E} came out as {short}")
    return short, iso


def short_coefficients(E: Curve) -> tuple[Fraction, Fraction]:
    """(A, B) of the short model used for twisting and point counting."""
    short, _ = to_short_form(E)
    return short.a4, short.a6


def quadratic_twist(E: Curve, d: int) -> Curve:
    """The twist y^2 = x^3 + A*d^2*x + B*d^3 of the short model of E by d."""
    if d == 1 or not is_squarefree(d):
        raise DomainError(f"Twist parameter must be squarefree and != 1, got {d}")
    A, B = short_coefficients(E)
    return new_curve(0, 0, 0, A * d * d, B * d**3)


def untwist_point(P: Point, d: int, F: TowerField) -> Point:
    """
    Send a rational point of the twist by d to the short model over F.

    (X, Y) on y^2 = x^3 + A*d^2*x + B*d^3 maps to (X/d, Y*sqrt(d)/d^2) on
    y^2 = x^3 + A*x + B; F must contain sqrt(d).
    """
    if P.is_infinity:
        return Point(F)
    root = F.sqrt_of_label(d)
    x = F.coerce(P.x.rational()) / d
    y = root * P.y.rational() / (d * d)
    return Point(F, x, y)
