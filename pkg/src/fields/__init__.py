from .polynomial import Polynomial
from .rationals import (
    SquarefreeLabel,
    as_fraction,
    format_rational,
    is_squarefree,
    rational_sqrt,
    squarefree_label,
    squarefree_part,
)
from .roots import (
    factor_quartic_over_Q,
    quadratic_factor_labels,
    rational_roots,
    roots_in_tower,
)
from .tower import QQ, TowerElement, TowerField, is_square_with_witness

__all__ = [
    "Polynomial",
    "SquarefreeLabel",
    "as_fraction",
    "format_rational",
    "is_squarefree",
    "rational_sqrt",
    "squarefree_label",
    "squarefree_part",
    "factor_quartic_over_Q",
    "quadratic_factor_labels",
    "rational_roots",
    "roots_in_tower",
    "QQ",
    "TowerElement",
    "TowerField",
    "is_square_with_witness",
]
