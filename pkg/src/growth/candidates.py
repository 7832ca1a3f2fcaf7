"""
Quadratic fields over which the torsion of a curve can grow.

Torsion over Q(sqrt(D)) is larger than over Q only along a few routes:
the 2-division field Q(sqrt(disc)), a rational 2-power point acquiring a
half, an odd-order point of the twist by D, and the cyclotomic fields
forced by full 3- or 4-torsion. The candidate set collects every field
these routes can produce, so it contains every growth field.
"""

from typing import Optional

from src.core.curve import Curve
from src.core.transforms import to_b_form, to_short_form
from src.fields.rationals import label_sort_key, squarefree_label
from src.fields.roots import rational_roots
from src.fields.tower import QQ
from src.logging_config import get_logger
from src.torsion.compute import torsion_over_Q
from src.torsion.division import division_polynomial
from src.torsion.groups import GroupStructure
from src.torsion.halving import halving_fields, two_primary_points

from .predictors import predict_even_growth_fields

logger = get_logger(__name__)

CYCLOTOMIC_LABELS = frozenset({-1, -3})

ODD_DIVISION_ORDERS = (3, 5, 7, 9)


def discriminant_field(E: Curve) -> set[int]:
    d = squarefree_label(E.discriminant)
    return set() if d == 1 else {d}


def odd_twist_fields(E: Curve) -> set[int]:
    """Labels D for which the twist by D has a rational point of odd order."""
    short, _ = to_short_form(E)
    f = short.cubic()
    labels = set()
    for n in ODD_DIVISION_ORDERS:
        for x0 in rational_roots(division_polynomial(short, n)):
            value = f(x0)
            if value == 0:
                continue
            d = squarefree_label(value)
            if d != 1:
                labels.add(d)
    return labels


def two_power_halving_fields(E: Curve) -> set[int]:
    """Fields over which some rational point of 2-power order acquires a half."""
    b_form, _ = to_b_form(E)
    labels = set()
    for P in two_primary_points(b_form, QQ):
        if not P.is_infinity:
            labels |= halving_fields(b_form, P)
    return labels


def candidate_fields(E: Curve, G: Optional[GroupStructure] = None) -> set[int]:
    """Every quadratic field where torsion might grow."""
    G = G or torsion_over_Q(E).structure
    labels = set(CYCLOTOMIC_LABELS)
    labels |= discriminant_field(E)
    labels |= odd_twist_fields(E)
    labels |= two_power_halving_fields(E)
    labels |= predict_even_growth_fields(E, G)
    logger.debug(f"{len(labels)} candidate fields for {E}: {sorted(labels, key=label_sort_key)}")
    return labels
