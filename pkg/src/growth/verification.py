"""Checks of an analysis report against the classification tables."""

from collections import Counter
from typing import Optional

from src.errors import VerificationError
from src.fields.rationals import squarefree_label
from src.logging_config import get_logger

from .models import AnalysisReport, VerificationFlags
from .tables import ClassificationTables, get_tables

logger = get_logger(__name__)


def _tower_group_constraint(report: AnalysisReport, tables: ClassificationTables) -> bool:
    G, T = report.rational_torsion, report.composite_torsion
    if G.is_cyclic:
        return not any(X.embeds_in(T) for X in tables.cyclic_excluded_tower_groups)
    limits = tables.noncyclic_tower_limits.get(G, frozenset())
    return any(T.embeds_in(L) for L in limits)


def _minimal_degree_respected(report: AnalysisReport, tables: ClassificationTables) -> bool:
    if report.rational_torsion.is_cyclic:
        return True
    needed = tables.minimal_tower_degrees.get(report.composite_torsion)
    return needed is None or report.degree >= needed


def _cyclotomic_fields_respected(report: AnalysisReport, tables: ClassificationTables) -> bool:
    for record in report.growth.records:
        for k, label in tables.cyclotomic_labels.items():
            if record.H.n % k == 0 and record.D != label:
                return False
    return True


def _full_two_torsion_labels(report: AnalysisReport) -> list[int]:
    # C3xC6 is not cyclic but gains no 2-torsion
    return [r.D for r in report.growth.records if not r.H.two_part().is_cyclic]


def _unique_noncyclic_growth(
    report: AnalysisReport, discriminant_label: Optional[int]
) -> bool:
    G = report.rational_torsion
    if not G.is_cyclic or G.m % 2:
        return True
    noncyclic = _full_two_torsion_labels(report)
    return noncyclic == [discriminant_label]


def check_report(
    report: AnalysisReport,
    tables: Optional[ClassificationTables] = None,
    discriminant=None,
) -> VerificationFlags:
    """
    Evaluate every classification check on a report.

    ``discriminant`` is the curve discriminant; without it the check on
    non-cyclic growth of even cyclic torsion uses the report's own growth set.
    """
    tables = tables or get_tables()
    G, T = report.rational_torsion, report.composite_torsion
    pattern = report.growth.pattern
    counts = Counter(pattern)
    reachable = tables.quadratic_growth.get(G, frozenset())

    if discriminant is not None:
        discriminant_label = squarefree_label(discriminant)
    else:
        noncyclic = _full_two_torsion_labels(report)
        discriminant_label = noncyclic[0] if len(noncyclic) == 1 else None

    flags = VerificationFlags(
        growth_groups_allowed=all(H in reachable and H != G for H in pattern),
        growth_counts_allowed=all(
            k in tables.allowed_counts(G, H) for H, k in counts.items()
        ),
        growth_pattern_allowed=pattern in tables.patterns_for(G),
        field_count_bounded=len(report.growth.records) <= 4,
        # towers built from a few growth fields sit inside the full compositum
        tower_group_allowed=any(T.embeds_in(X) for X in tables.multiquadratic_torsion),
        tower_group_constraint=_tower_group_constraint(report, tables),
        minimal_degree_respected=_minimal_degree_respected(report, tables),
        cyclotomic_fields_respected=_cyclotomic_fields_respected(report, tables),
        embedding_respected=all(G.embeds_in(H) for H in pattern) and G.embeds_in(T),
        unique_noncyclic_growth=_unique_noncyclic_growth(report, discriminant_label),
        exceptional_shape=(G, pattern) in tables.exceptional_shapes,
        unseen_tower_group=T in tables.unseen_tower_groups,
    )
    if flags.failures():
        logger.warning(f"Report {report.label or report.coefficients} fails {flags.failures()}")
    return flags


_FAILURE_MESSAGES = {
    "growth_groups_allowed": "a grown group is not reachable from {G}",
    "growth_counts_allowed": "a grown group occurs a forbidden number of times for {G}",
    "growth_pattern_allowed": "the growth pattern is not allowed for {G}",
    "field_count_bounded": "torsion grows over more than four quadratic fields",
    "tower_group_allowed": "{T} is not a multiquadratic torsion group",
    "tower_group_constraint": "{T} is not allowed over the compositum for {G}",
    "minimal_degree_respected": "{T} appears in degree {d}, which is too small",
    "cyclotomic_fields_respected": "full 3- or 4-torsion appears outside its cyclotomic field",
    "embedding_respected": "{G} does not embed in every grown group",
    "unique_noncyclic_growth": "{G} does not gain full 2-torsion over exactly one field",
}


def describe_failures(report: AnalysisReport, flags: VerificationFlags) -> list[str]:
    return [
        _FAILURE_MESSAGES[name].format(
            G=report.rational_torsion, T=report.composite_torsion, d=report.degree
        )
        for name in flags.failures()
    ]


def verify_report(
    report: AnalysisReport,
    tables: Optional[ClassificationTables] = None,
    discriminant=None,
) -> VerificationFlags:
    """Like check_report, but raises VerificationError when a check fails."""
    flags = check_report(report, tables, discriminant)
    failures = flags.failures()
    if failures:
        details = describe_failures(report, flags)
        raise VerificationError(
            f"Report for {report.label or ','.join(report.coefficients)} failed: "
            + "; ".join(details),
            failures,
        )
    return flags