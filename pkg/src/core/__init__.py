from .curve import Curve, Point, new_curve, point_add, point_neg, scalar_mul
from .isomorphism import Isomorphism
from .tate import TateForm, tate_curve, tate_normal_form, tate_parameter
from .transforms import quadratic_twist, to_b_form, to_short_form

__all__ = [
    "Curve",
    "Point",
    "new_curve",
    "point_add",
    "point_neg",
    "scalar_mul",
    "Isomorphism",
    "TateForm",
    "tate_curve",
    "tate_normal_form",
    "tate_parameter",
    "quadratic_twist",
    "to_b_form",
    "to_short_form",
]
