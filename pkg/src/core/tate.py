"""
Tate normal form ``y^2 + (1-c)xy - by = x^3 - bx^2`` with (0, 0) a torsion point.

Every curve over Q with a rational point of order N >= 4 has such a model,
and for N in 4..8 the pair (b, c) is a rational function of one parameter t.
"""

from dataclasses import dataclass
from fractions import Fraction

from src.core.curve import Curve, Point, new_curve
from src.core.isomorphism import Isomorphism
from src.errors import DomainError, InconsistencyError
from src.fields.rationals import Rational, as_fraction
from src.fields.tower import QQ
from src.logging_config import get_logger

logger = get_logger(__name__)

PARAMETRIZED_ORDERS = (4, 5, 6, 7, 8)


@dataclass(frozen=True)
class TateForm:
    b: Fraction
    c: Fraction
    order: int
    isomorphism: Isomorphism

    @property
    def curve(self) -> Curve:
        return tate_curve_from_bc(self.b, self.c)


def tate_curve_from_bc(b: Rational, c: Rational) -> Curve:
    b, c = as_fraction(b), as_fraction(c)
    return new_curve(1 - c, -b, -b, 0, 0)


def tate_normal_form(E: Curve, P: Point) -> TateForm:
    """Move the rational point P of order N >= 4 to (0, 0) in Tate normal form."""
    if P.is_infinity or not P.is_rational():
        raise DomainError(f"{P} is not a rational affine point")
    P = P.restrict(QQ)
    N = E.order(P, cap=16)
    if N is None:
        raise DomainError(f"{P} has infinite order or order above 16")
    if N < 4:
        raise DomainError(f"Tate normal form needs order >= 4, {P} has order {N}")

    translate = Isomorphism(Fraction(1), P.x.rational(), Fraction(0), P.y.rational())
    E1 = translate.apply(E)
    # a3 != 0 since (0, 0) is not 2-torsion
    shear = Isomorphism(Fraction(1), Fraction(0), E1.a4 / E1.a3, Fraction(0))
    E2 = shear.apply(E1)
    # a2 != 0 since (0, 0) is not 3-torsion
    scale = Isomorphism(E2.a3 / E2.a2)
    iso = translate.then(shear).then(scale)
    E3 = iso.apply(E)

    b, c = -E3.a2, 1 - E3.a1
    form = TateForm(b, c, N, iso)
    T = form.curve
    if E3 != T:
        raise InconsistencyError(f"Tate reduction of {E} gave {E3}, expected {T}")
    origin = T.point(0, 0)
    if T.order(origin, cap=N) != N or iso.map_point(P) != origin:
        raise InconsistencyError(f"(0, 0) does not have order {N} on {T}")
    logger.debug(f"Tate normal form of {E}: b={b}, c={c}, N={N}")
    return form


def tate_parameter(form: TateForm) -> Fraction:
    """The parameter t of the one-parameter family for N in {4, 6, 8}."""
    b, c, N = form.b, form.c, form.order
    if N == 4:
        if c != 0:
            raise InconsistencyError(f"Order 4 form with c = {c}")
        return b
    if N == 6:
        t = c
        if b != t * t + t:
            raise InconsistencyError(f"Order 6 form with b = {b}, c = {c}")
        return t
    if N == 8:
        if c == 0:
            raise InconsistencyError("Order 8 form with c = 0")
        t = b / c
        if c != (2 * t - 1) * (t - 1) / t or b != (2 * t - 1) * (t - 1):
            raise InconsistencyError(f"Order 8 form with b = {b}, c = {c}")
        return t
    raise DomainError(f"No one-parameter family for N = {N}")


def tate_curve(t: Rational, N: int) -> Curve:
    """The curve of the family for N in 4..8 at parameter t; (0, 0) has order N."""
    t = as_fraction(t)
    if N == 4:
        b, c = t, Fraction(0)
    elif N == 5:
        b, c = t, t
    elif N == 6:
        b, c = t * t + t, t
    elif N == 7:
        b, c = t**3 - t * t, t * t - t
    elif N == 8:
        if t == 0:
            raise DomainError("t = 0 is a pole of the order 8 family")
        b = (2 * t - 1) * (t - 1)
        c = b / t
    else:
        raise DomainError(f"N must be one of {PARAMETRIZED_ORDERS}, got {N}")
    return tate_curve_from_bc(b, c)
