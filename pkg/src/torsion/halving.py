"""
Halving points on a b-form curve y^2 = x^3 + a2*x^2 + a4*x + a6.

For P = (x0, y0) the x-coordinates of the points Q with 2Q = P are
x0 + (alpha^2 - A)/2 for the roots alpha of

    q(x) = x^4 - 2A*x^2 - 8*y0*x + A^2 - 4B,

with A = 3*x0 + a2 and B = 3*x0^2 + 2*a2*x0 + a4. When P is rational this
polynomial is rational and its roots in a tower come from factoring it over
Q. Points that are not rational are halved with the square root test in the
2-division field instead: with e1, e2, e3 the roots of the cubic, P is in 2E
iff every x0 - ei is a square, and the halves come from those roots.
"""

from typing import Optional

from src.config import get_config
from src.core.curve import Curve, Point
from src.errors import DomainError, InconsistencyError
from src.fields.polynomial import Polynomial, linear
from src.fields.rationals import squarefree_label
from src.fields.roots import quadratic_factor_labels, rational_roots, roots_in_tower
from src.fields.tower import QQ, TowerElement, TowerField, is_square_with_witness
from src.logging_config import get_logger

logger = get_logger(__name__)


def _require_b_form(E: Curve):
    if not E.is_b_form:
        raise DomainError(f"Halving needs a model with a1 = a3 = 0, got {E}")


def halving_quartic(E: Curve, P: Point) -> tuple[Polynomial, object]:
    """The quartic q for P and the value A used to recover the halves."""
    _require_b_form(E)
    if P.is_infinity:
        raise DomainError("The point at infinity has no halving quartic")
    x0, y0 = P.x, P.y
    if P.is_rational():
        x0, y0 = x0.rational(), y0.rational()
    A = 3 * x0 + E.a2
    B = 3 * x0 * x0 + 2 * E.a2 * x0 + E.a4
    q = Polynomial.of(A * A - 4 * B, -8 * y0, -2 * A, 0, 1)
    return q, A


def two_torsion_splitting(E: Curve, F: TowerField) -> tuple[TowerField, list[TowerElement]]:
    """
    The smallest tower over F containing E[2] when that is multiquadratic.

    Returns the field and the roots of the cubic in it, or F and an empty list
    when the cubic has no rational root (E[2] then needs a cubic extension).
    """
    _require_b_form(E)
    cubic = E.cubic()
    roots = sorted(rational_roots(cubic))
    if not roots:
        return F, []
    if len(roots) == 3:
        return F, [F.scalar(e) for e in roots]
    e1 = roots[0]
    quadratic = cubic // linear(e1)
    disc = quadratic[1] * quadratic[1] - 4 * quadratic[0]
    d = squarefree_label(disc)
    field = F if F.contains_label(d) else F.adjoin(d)
    w = is_square_with_witness(disc, field)
    e2 = (-quadratic[1] + w) / 2
    e3 = (-quadratic[1] - w) / 2
    return field, [field.scalar(e1), e2, e3]


def _odd_half(E: Curve, P: Point) -> Optional[Point]:
    """((k + 1)/2) * P when P has odd order k."""
    k = E.order(P, cap=get_config().tower_two_power_cap * 16)
    if k is None or k % 2 == 0:
        return None
    return E.multiply((k + 1) // 2, P)


def _halves_from_quartic(E: Curve, P: Point, F: TowerField) -> set[Point]:
    q, A = halving_quartic(E, P)
    x0, y0 = P.x, P.y
    halves = set()
    for alpha in roots_in_tower(q, F):
        shift = (alpha * alpha - A) / 2
        halves.add(Point(F, shift + x0, alpha * shift - y0))
    return halves


def _halves_in_splitting_field(E: Curve, P: Point, F: TowerField) -> set[Point]:
    split_field, es = two_torsion_splitting(E, F)
    if not es:
        half = _odd_half(E, P)
        if half is None:
            raise DomainError(
                f"Cannot halve {P}: E has no rational 2-torsion and P is not of odd order"
            )
        return {half}
    target = P.promote(split_field)
    x0 = target.x
    roots = []
    for e in es:
        r = is_square_with_witness(x0 - e, split_field)
        if r is None:
            return set()
        roots.append(r)
    r1, r2, r3 = roots
    halves = set()
    for s2, s3 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        x = x0 + s2 * r1 * r2 + s3 * r1 * r3 + s2 * s3 * r2 * r3
        w = is_square_with_witness(E.cubic()(x), split_field)
        if w is None:
            continue
        for y in (w, -w):
            Q = Point(split_field, x, y)
            if E.double(Q) == target:
                restricted = Q.restrict(F)
                if restricted is not None:
                    halves.add(restricted)
    return halves


def halve_point(E: Curve, P: Point, F: Optional[TowerField] = None) -> set[Point]:
    """All Q in E(F) with 2Q = P, each verified."""
    _require_b_form(E)
    if P.is_infinity:
        raise DomainError("Halving the point at infinity gives E[2]; use two_primary_points")
    F = F or P.field
    P = P.promote(F)
    if P.is_rational():
        halves = _halves_from_quartic(E, P, F)
    else:
        halves = _halves_in_splitting_field(E, P, F)
    for Q in halves:
        if E.double(Q) != P or not E.contains(Q):
            raise InconsistencyError(f"{Q} is not a half of {P} on {E}")
    return halves


def halving_fields(E: Curve, P: Point) -> set[int]:
    """Labels of the quadratic fields over which a rational P acquires a half."""
    q, _ = halving_quartic(E, P.restrict(QQ) or P)
    return quadratic_factor_labels(q.to_rational())


def two_primary_points(E: Curve, F: TowerField, cap: Optional[int] = None) -> set[Point]:
    """
    The points of 2-power order in E(F), including O.

    Starts from E[2] and halves every new point until nothing new appears;
    orders above ``cap`` mean the input is outside the supported range.
    """
    _require_b_form(E)
    cap = cap or get_config().tower_two_power_cap
    split_field, es = two_torsion_splitting(E, F)
    origin = Point(split_field)
    orders: dict[Point, int] = {origin: 1}
    queue = []
    for e in es:
        T = Point(split_field, e, split_field.zero())
        orders[T] = 2
        queue.append(T)
    while queue:
        P = queue.pop()
        for Q in halve_point(E, P, split_field):
            if Q in orders:
                continue
            order = 2 * orders[P]
            if order > cap:
                raise InconsistencyError(f"Point of order {order} above cap {cap} over {F}")
            orders[Q] = order
            queue.append(Q)
    points = set()
    for P in orders:
        restricted = P.restrict(F)
        if restricted is not None:
            points.add(restricted)
    logger.debug(f"{len(points)} points of 2-power order over {F}")
    return points
