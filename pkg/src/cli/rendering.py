"""Text and JSON output of the command-line tools."""

from typing import Dict, List

from pydantic import BaseModel, Field

from src.config import get_config
from src.growth.models import AnalysisReport, GrowthSet
from src.torsion.groups import GroupStructure

from .fixtures import FixtureRow


class RowOutcome(BaseModel):
    """Comparison of one fixture row with the computed report."""

    label: str = Field(..., examples=["19a2"])
    passed: bool = Field(..., description="Whether every expected value matched")
    differences: List[str] = Field(
        default_factory=list,
        description="One line per mismatching value, expected then computed",
        examples=[["degree: expected 4, computed 2"]],
    )


class RunDocument(BaseModel):
    """Machine-readable output of a single command run."""

    schema_version: str = Field(default_factory=lambda: get_config().report_schema_version)
    command: str = Field(..., examples=["analyze"])
    reports: List[AnalysisReport] = Field(default_factory=list)
    rows: List[RowOutcome] = Field(default_factory=list)


class TablesDocument(BaseModel):
    """Machine-readable classification tables, keyed by group codes such as 2x8."""

    schema_version: str = Field(default_factory=lambda: get_config().report_schema_version)
    rational_torsion: List[str] = Field(..., examples=[["1x1", "1x2"]])
    quadratic_torsion_all_fields: List[str]
    quadratic_torsion: List[str]
    quadratic_growth: Dict[str, List[str]] = Field(..., examples=[{"1x7": ["1x7"]}])
    growth_counts: Dict[str, List[int]] = Field(..., examples=[{"2x2->2x4": [1, 2, 3]}])
    growth_patterns: Dict[str, List[List[str]]]
    multiquadratic_torsion: List[str]


def compare_row(row: FixtureRow, report: AnalysisReport) -> RowOutcome:
    differences = []

    def check(name: str, expected, computed):
        if expected != computed:
            differences.append(f"{name}: expected {expected}, computed {computed}")

    check("G", row.expected_G, report.rational_torsion)
    check("S", row.expected_growth, report.growth)
    check("E(F_S)", row.expected_tower_torsion, report.composite_torsion)
    check("degree", row.expected_degree, report.degree)
    if report.flags is not None:
        for name in report.flags.failures():
            differences.append(f"check {name} failed")
    return RowOutcome(label=row.label, passed=not differences, differences=differences)


def _field(generators: list[int]) -> str:
    if not generators:
        return "Q"
    return "Q(" + ", ".join(f"sqrt({d})" for d in generators) + ")"


def render_growth(growth: GrowthSet) -> list[str]:
    if not growth.records:
        return ["  no growth over any quadratic field"]
    return [f"  Q(sqrt({r.D})): {r.H}" for r in growth.records]


def render_report(report: AnalysisReport) -> str:
    title = report.label or "curve"
    lines = [
        f"{title} [{', '.join(report.coefficients)}]",
        f"G = {report.rational_torsion}",
        f"S = {[str(H) for H in report.growth.pattern]}",
        *render_growth(report.growth),
        f"F_S = {_field(report.composite_field)} (degree {report.degree})",
        f"E(F_S)_tors = {report.composite_torsion}",
    ]
    if report.flags is not None:
        failures = report.flags.failures()
        lines.append("checks: " + ("all passed" if not failures else "FAILED " + ", ".join(failures)))
        if report.flags.exceptional_shape:
            lines.append("note: E(F_S) is not determined by G and S for this shape")
        if report.flags.unseen_tower_group:
            lines.append(f"note: {report.composite_torsion} has no bundled example")
    return "\n".join(lines)


def render_outcome(outcome: RowOutcome) -> str:
    if outcome.passed:
        return f"[ok]   {outcome.label}"
    return "\n".join([f"[FAIL] {outcome.label}"] + [f"       {d}" for d in outcome.differences])


def render_groups(groups) -> str:
    return "{" + ", ".join(str(G) for G in groups) + "}"


def render_tables(document: TablesDocument) -> str:
    """Text form of the classification tables."""

    def groups(codes: list[str]) -> str:
        return render_groups(GroupStructure.parse(code) for code in codes)

    lines = [
        f"Torsion over Q: {groups(document.rational_torsion)}",
        f"Torsion over quadratic fields: {groups(document.quadratic_torsion_all_fields)}",
        f"Torsion over quadratic fields, curves over Q: {groups(document.quadratic_torsion)}",
        "",
        "Growth over quadratic fields:",
    ]
    for G, targets in document.quadratic_growth.items():
        lines.append(f"  {GroupStructure.parse(G)} -> {groups(targets)}")
    lines += ["", "Number of fields per growth:"]
    for key, counts in document.growth_counts.items():
        G, H = key.split("->")
        lines.append(f"  {GroupStructure.parse(G)} -> {GroupStructure.parse(H)}: {counts}")
    lines += ["", "Growth patterns:"]
    for G, patterns in document.growth_patterns.items():
        shown = ["[" + ", ".join(str(GroupStructure.parse(h)) for h in p) + "]" for p in patterns]
        lines.append(f"  {GroupStructure.parse(G)}: {'; '.join(shown)}")
    lines += ["", f"Torsion over the compositum of all quadratic fields: {groups(document.multiquadratic_torsion)}"]
    return "\n".join(lines)


def summary_line(outcomes: List[RowOutcome]) -> str:
    passed = sum(o.passed for o in outcomes)
    return f"{passed}/{len(outcomes)} rows verified"
