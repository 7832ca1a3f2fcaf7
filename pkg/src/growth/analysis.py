from typing import Iterable, Optional

from src.core.curve import Curve
from src.fields.rationals import format_rational, label_sort_key
from src.fields.tower import QQ, TowerField
from src.logging_config import get_logger
from src.torsion.compute import torsion_over_Q, torsion_over_quadratic, torsion_over_tower

from .candidates import candidate_fields
from .models import AnalysisReport, GrowthRecord, GrowthSet
from .tables import ClassificationTables
from .verification import check_report

logger = get_logger(__name__)


def composite_field(labels: Iterable[int]) -> TowerField:
    """The compositum of Q(sqrt(D)) over the labels, skipping dependent ones."""
    F = QQ
    for d in sorted(set(labels), key=label_sort_key):
        if not F.contains_label(d):
            F = F.adjoin(d)
    return F


def growth_set(E: Curve) -> GrowthSet:
    """Every quadratic field over which the torsion of E grows, with the new group."""
    G = torsion_over_Q(E).structure
    records = []
    for D in sorted(candidate_fields(E, G), key=label_sort_key):
        H = torsion_over_quadratic(E, D).structure
        if H != G:
            logger.debug(f"Torsion of {E} grows to {H} over Q(sqrt({D}))")
            records.append(GrowthRecord(D=D, H=H))
    return GrowthSet(records=records)


def analyze(
    E: Curve,
    label: Optional[str] = None,
    tables: Optional[ClassificationTables] = None,
) -> AnalysisReport:
    """Torsion of E over Q, over every growth field and over their compositum."""
    G = torsion_over_Q(E).structure
    growth = growth_set(E)
    F = composite_field(growth.labels)
    T = torsion_over_tower(E, F).structure
    report = AnalysisReport(
        label=label,
        coefficients=[format_rational(c) for c in E.coefficients],
        rational_torsion=G,
        growth=growth,
        composite_field=list(F.generators),
        composite_torsion=T,
        degree=F.degree,
    )
    report = report.with_flags(check_report(report, tables, E.discriminant))
    logger.info(
        f"{label or E.coefficient_string()}: G = {G}, S = {growth}, "
        f"torsion over {F} is {T}"
    )
    return report
