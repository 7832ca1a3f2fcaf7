"""
Closed-form growth fields for even rational torsion.

Each predictor tests a square condition on a parameter of the curve and, when
it holds, names the two quadratic fields over which a rational point of
maximal 2-power order acquires a half:

- C2, with 2-torsion point moved to (0, 0) on y^2 = x(x^2 + A*x + B):
  B = s^2 gives Q(sqrt(A + 2s)) and Q(sqrt(A - 2s)).
- C4 in Tate form with parameter t: t = -s^2 gives Q(sqrt(1 +/- 4s)).
- C6: t = -s^2 gives Q(sqrt((1 +/- s)(1 -/+ 3s))).
- C8: t = s^2/(s^2 + 1) gives Q(sqrt((s^4 - 1)(s^2 +/- 2s - 1))).
- C2xC2: a 2-torsion point (e, 0) halves over Q(sqrt(D)) when both
  e - e' and e - e'' are squares there.

The halving quartics find the same fields without these formulas; the
predictors serve as an independent check.
"""

from fractions import Fraction
from math import gcd
from typing import Callable, Optional

from src.core.curve import Curve
from src.core.tate import tate_normal_form, tate_parameter
from src.core.transforms import to_b_form
from src.errors import InconsistencyError
from src.fields.rationals import rational_sqrt, squarefree_label
from src.fields.roots import rational_roots
from src.logging_config import get_logger
from src.torsion.compute import torsion_over_Q
from src.torsion.groups import GroupStructure

logger = get_logger(__name__)


def _pair(first: Fraction, second: Fraction, source: str) -> set[int]:
    labels = (squarefree_label(first), squarefree_label(second))
    if labels[0] == labels[1]:
        raise InconsistencyError(f"{source} gave the same field twice: {labels[0]}")
    logger.debug(f"{source} predicts growth fields {labels}")
    return set(labels)


def order_two_fields(E: Curve) -> set[int]:
    """Fields where the rational 2-torsion point of a C2 curve halves."""
    b_form, _ = to_b_form(E)
    roots = sorted(rational_roots(b_form.cubic()))
    if len(roots) != 1:
        raise InconsistencyError(f"Expected exactly one rational 2-torsion point on {E}")
    e = roots[0]
    A = 3 * e + b_form.a2
    B = 3 * e * e + 2 * b_form.a2 * e + b_form.a4
    s = rational_sqrt(B)
    if s is None:
        return set()
    return _pair(A + 2 * s, A - 2 * s, "order 2 test")


def _tate_square_root(E: Curve, N: int, transform: Callable[[Fraction], Fraction]) -> Optional[Fraction]:
    data = torsion_over_Q(E)
    g = data.generators[-1]
    # (E, kP) and (E, -kP) share a Tate form, so each class is tried once
    for k in range(1, N // 2 + 1):
        if gcd(k, N) != 1:
            continue
        form = tate_normal_form(E, E.multiply(k, g))
        if form.order != N:
            raise InconsistencyError(f"Generator of {data.structure} has Tate order {form.order}")
        s = rational_sqrt(transform(tate_parameter(form)))
        if s is not None:
            return s
    return None


def order_four_fields(E: Curve) -> set[int]:
    s = _tate_square_root(E, 4, lambda t: -t)
    if s is None:
        return set()
    return _pair(1 + 4 * s, 1 - 4 * s, "order 4 test")


def order_six_fields(E: Curve) -> set[int]:
    s = _tate_square_root(E, 6, lambda t: -t)
    if s is None:
        return set()
    return _pair((1 + s) * (1 - 3 * s), (1 - s) * (1 + 3 * s), "order 6 test")


def order_eight_fields(E: Curve) -> set[int]:
    # t = s^2/(s^2 + 1) iff t/(1 - t) = s^2
    s = _tate_square_root(E, 8, lambda t: t / (1 - t))
    if s is None:
        return set()
    base = s**4 - 1
    return _pair(base * (s * s + 2 * s - 1), base * (s * s - 2 * s - 1), "order 8 test")


def full_two_torsion_fields(E: Curve) -> set[int]:
    """At most one field per 2-torsion point of a C2xC2 curve."""
    b_form, _ = to_b_form(E)
    roots = sorted(rational_roots(b_form.cubic()))
    if len(roots) != 3:
        raise InconsistencyError(f"Expected three rational 2-torsion points on {E}")
    labels = set()
    for i, e in enumerate(roots):
        a, b = (e - other for j, other in enumerate(roots) if j != i)
        la, lb = squarefree_label(a), squarefree_label(b)
        if la == 1 and lb != 1:
            labels.add(lb)
        elif lb == 1 and la != 1:
            labels.add(la)
        elif la != 1 and la == lb:
            labels.add(la)
    logger.debug(f"2-torsion test predicts growth fields {sorted(labels)}")
    return labels


_PREDICTORS = {
    GroupStructure.cyclic(2): order_two_fields,
    GroupStructure.cyclic(4): order_four_fields,
    GroupStructure.cyclic(6): order_six_fields,
    GroupStructure.cyclic(8): order_eight_fields,
    GroupStructure.of(2, 2): full_two_torsion_fields,
}


def predict_even_growth_fields(E: Curve, G: Optional[GroupStructure] = None) -> set[int]:
    """Closed-form growth fields for G in {C2, C4, C6, C8, C2xC2}; empty otherwise."""
    G = G or torsion_over_Q(E).structure
    predictor = _PREDICTORS.get(G)
    if predictor is None:
        return set()
    return predictor(E)
