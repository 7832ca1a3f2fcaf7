"""Tests for classification tables, growth predictors, candidates and report checks."""

import random
from fractions import Fraction

import pytest
import yaml
from pydantic import ValidationError

from src.config import get_config
from src.core.curve import new_curve
from src.core.tate import tate_curve
from src.core.transforms import to_b_form
from src.errors import DomainError, InconsistencyError, SingularCurveError, VerificationError
from src.fields import is_squarefree
from src.growth import (
    AnalysisReport,
    GrowthRecord,
    GrowthSet,
    analyze,
    candidate_fields,
    check_report,
    composite_field,
    load_tables,
    predict_even_growth_fields,
    verify_report,
)
from src.growth.predictors import (
    full_two_torsion_fields,
    order_eight_fields,
    order_four_fields,
    order_six_fields,
    order_two_fields,
)
from src.growth.tables import pattern_of
from src.growth.verification import describe_failures
from src.torsion.compute import torsion_over_Q, torsion_over_quadratic
from src.torsion.groups import GroupStructure
from src.torsion.halving import halving_fields

C = GroupStructure.cyclic


def _report(G, records, T, generators=None, label="test") -> AnalysisReport:
    growth = GrowthSet.of(records)
    gens = generators if generators is not None else list(composite_field(growth.labels).generators)
    return AnalysisReport(
        label=label,
        coefficients=["0", "0", "0", "0", "1"],
        rational_torsion=G,
        growth=growth,
        composite_field=gens,
        composite_torsion=T,
        degree=1 << len(gens),
    )


def test_bundled_tables(tables):
    """Test the bundled tables load and contain the expected classification."""
    assert len(tables.rational_torsion) == 15
    assert len(tables.quadratic_torsion) == 22
    assert tables.quadratic_growth[C(7)] == frozenset({C(7)})
    assert tables.allowed_counts(GroupStructure.of(2, 2), GroupStructure.of(2, 4)) == {1, 2, 3}
    assert set(tables.patterns_for(C(8))) == {
        (),
        pattern_of([GroupStructure.of(2, 8)]),
        pattern_of([GroupStructure.of(2, 8), C(16), C(16)]),
    }


def test_patterns_start_with_empty(tables):
    """Test the empty pattern comes first and C7 has no other."""
    assert tables.patterns_for(C(1))[0] == ()
    assert tables.patterns_for(C(7)) == [()]


def test_growth_options(tables):
    """Test C3 can grow to C15 or C3xC3."""
    assert tables.growth_options(C(3)) == [C(15), GroupStructure.of(3, 3)]


def test_tables_document(tables):
    """Test the JSON dump of the tables uses group codes."""
    document = tables.as_document()
    assert document["quadratic_growth"]["1x7"] == ["1x7"]
    assert document["growth_counts"]["2x2->2x4"] == [1, 2, 3]
    assert "2x16" in document["multiquadratic_torsion"]


def test_load_tables_missing_file(tmp_path):
    """Test a missing tables file is a domain error."""
    with pytest.raises(DomainError):
        load_tables(tmp_path / "missing.yaml")


def test_load_tables_missing_section(tmp_path):
    """Test a tables file without every section is rejected."""
    path = tmp_path / "tables.yaml"
    path.write_text("rational_torsion: [1x1]\n")
    with pytest.raises(DomainError, match="missing section"):
        load_tables(path)


def test_load_tables_inconsistent(tmp_path):
    """Test a growth table that omits G itself is rejected."""
    with open(get_config().classification_path) as f:
        raw = yaml.safe_load(f)
    raw["quadratic_growth"]["1x1"] = ["1x3", "1x5", "1x7", "1x9"]
    path = tmp_path / "tables.yaml"
    path.write_text(yaml.safe_dump(raw))
    with pytest.raises(InconsistencyError):
        load_tables(path)


def test_growth_set_is_canonical():
    """Test records sort by |D| with negative labels first."""
    growth = GrowthSet.of([(5, C(3)), (-15, C(3)), (-3, C(3))])
    assert growth.labels == [-3, 5, -15]


@pytest.mark.parametrize(
    "pairs",
    [
        [(5, C(3)), (5, C(15))],
        [(-1, C(4)), (2, C(4)), (-2, C(4)), (3, C(4)), (5, C(4))],
        [(4, C(3))],
        [(1, C(3))],
    ],
)
def test_growth_set_rejects(pairs):
    """Test repeated, excess, non-squarefree and trivial labels are rejected."""
    with pytest.raises(ValidationError):
        GrowthSet.of(pairs)


def test_report_degree_must_match_generators():
    """Test the degree must be 2 to the number of generators."""
    with pytest.raises(ValidationError):
        AnalysisReport(
            coefficients=["0", "0", "0", "0", "1"],
            rational_torsion=C(1),
            composite_field=[-3],
            composite_torsion=C(3),
            degree=4,
        )


def test_report_json_roundtrip():
    """Test a checked report survives JSON serialization."""
    report = _report(C(1), [(5, C(3)), (-15, C(3))], GroupStructure.of(3, 3))
    report = report.with_flags(check_report(report))
    assert AnalysisReport.model_validate_json(report.model_dump_json()) == report


def test_two_cubic_growths_pass():
    """Test G = C1 growing to C3 over two fields satisfies every check."""
    report = _report(C(1), [(5, C(3)), (-15, C(3))], GroupStructure.of(3, 3))
    flags = check_report(report)
    assert flags.passed
    assert verify_report(report) == flags


def test_three_cubic_growths_fail():
    """Test C1 cannot grow to C3 over three fields."""
    report = _report(
        C(1), [(5, C(3)), (-15, C(3)), (-3, C(3))], GroupStructure.of(3, 3)
    )
    flags = check_report(report)
    assert "growth_counts_allowed" in flags.failures()
    assert "growth_pattern_allowed" in flags.failures()


def test_forbidden_pattern_fails():
    """Test S = [C15, C3xC3] is not a pattern for G = C3."""
    report = _report(C(3), [(5, C(15)), (-3, GroupStructure.of(3, 3))], GroupStructure.of(3, 15))
    flags = check_report(report)
    assert flags.growth_counts_allowed
    assert not flags.growth_pattern_allowed


def test_full_four_torsion_outside_gaussian_field_fails():
    """Test C4xC4 over Q(sqrt(-2)) breaks the cyclotomic check."""
    report = _report(C(4), [(-2, GroupStructure.of(4, 4))], GroupStructure.of(4, 4))
    flags = check_report(report)
    assert flags.failures() == ["cyclotomic_fields_respected"]


def test_unique_noncyclic_growth_uses_discriminant():
    """Test C2 gains full 2-torsion only over the field of the discriminant."""
    report = _report(C(2), [(-7, GroupStructure.of(2, 2))], GroupStructure.of(2, 2))
    assert check_report(report, discriminant=-7 * 16).passed
    assert not check_report(report, discriminant=5).unique_noncyclic_growth


def test_odd_noncyclic_growth_is_not_two_torsion():
    """Test C6 growing to C3xC6 does not count as gaining 2-torsion."""
    report = _report(
        C(6),
        [(-7, GroupStructure.of(2, 6)), (-3, GroupStructure.of(3, 6))],
        GroupStructure.of(6, 6),
    )
    assert check_report(report, discriminant=-28).passed


def test_verify_report_raises():
    """Test verify_report raises with the failing check names and descriptions."""
    report = _report(C(4), [(-2, GroupStructure.of(4, 4))], GroupStructure.of(4, 4))
    with pytest.raises(VerificationError) as exc:
        verify_report(report)
    assert exc.value.failures == ["cyclotomic_fields_respected"]
    assert describe_failures(report, check_report(report)) == [
        "full 3- or 4-torsion appears outside its cyclotomic field"
    ]


def test_informational_flags_never_fail():
    """Test the exceptional shape flag is reported without failing the report."""
    report = _report(
        C(2),
        [(5, GroupStructure.of(2, 2)), (-1, C(4)), (-5, C(4))],
        GroupStructure.of(2, 4),
    )
    flags = check_report(report, discriminant=5)
    assert flags.exceptional_shape
    assert flags.passed


def test_composite_field_skips_dependent_labels():
    """Test -2 * -5 = 10 adds no generator to the composite field."""
    F = composite_field([10, -5, -2, -3])
    assert F.generators == (-2, -3, -5)
    assert F.degree == 8
    assert composite_field([]).degree == 1


def test_order_two_fields():
    """Test y^2 = x(x^2 + 3x + 4): B = 4 = 2^2 gives Q(sqrt(7)) and Q(sqrt(-1))."""
    assert order_two_fields(new_curve(0, 3, 0, 4, 0)) == {7, -1}


def test_order_four_fields():
    """Test the order 4 Tate curve at t = -1 predicts Q(sqrt(5)) and Q(sqrt(-3))."""
    assert order_four_fields(tate_curve(-1, 4)) == {5, -3}


def test_order_six_fields():
    """Test the order 6 Tate curve at t = -4 predicts Q(sqrt(-15)) and Q(sqrt(-7))."""
    assert order_six_fields(tate_curve(-4, 6)) == {-15, -7}


def test_order_eight_fields():
    """Test the order 8 Tate curve at t = 4/5 predicts Q(sqrt(105)) and Q(sqrt(-15))."""
    assert order_eight_fields(tate_curve(Fraction(4, 5), 8)) == {105, -15}


def test_full_two_torsion_fields(e_x3_minus_x):
    """Test y^2 = x^3 - x predicts Q(i) and Q(sqrt(2))."""
    assert full_two_torsion_fields(e_x3_minus_x) == {-1, 2}


def test_no_prediction_for_odd_torsion(curve_19a2):
    """Test trivial torsion has no closed-form prediction."""
    assert predict_even_growth_fields(curve_19a2, C(1)) == set()


def test_candidate_fields(curve_19a2):
    """Test the candidates for 19a2 include Q(sqrt(-3)) and Q(sqrt(-19))."""
    labels = candidate_fields(curve_19a2)
    assert -3 in labels
    assert -19 in labels


def test_candidate_fields_contain_predictions():
    """Test predicted fields are among the candidates."""
    E = tate_curve(-1, 4)
    assert order_four_fields(E) <= candidate_fields(E)


@pytest.mark.slow
def test_candidate_fields_of_30a7():
    """Test all four growth fields of 30a7 are candidates."""
    assert {10, -5, -2, -3} <= candidate_fields(new_curve(1, 0, 1, -5334, -150368))


def test_analyze_19a2(curve_19a2):
    """Test 19a2 grows from C1 to C3 over Q(sqrt(-3)) only."""
    report = analyze(curve_19a2, label="19a2")
    assert report.rational_torsion == C(1)
    assert report.growth == GrowthSet.of([(-3, C(3))])
    assert report.composite_torsion == C(3)
    assert report.degree == 2
    assert report.flags.passed


def test_analyze_36a3():
    """Test 36a3 grows from C2 to C2xC6 over Q(sqrt(-3))."""
    report = analyze(new_curve(0, 0, 0, 0, -27))
    assert report.rational_torsion == C(2)
    assert report.growth.records == [GrowthRecord(D=-3, H=GroupStructure.of(2, 6))]
    assert report.composite_field == [-3]


def test_analyze_curve_without_growth():
    """Test the order 7 curve gains no torsion over any quadratic field."""
    report = analyze(tate_curve(2, 7))
    assert report.rational_torsion == C(7)
    assert report.growth.records == []
    assert report.degree == 1
    assert report.composite_torsion == C(7)


@pytest.mark.slow
def test_random_curves_pass_every_check():
    """Test analyses of 200 random curves with |a_i| <= 20 satisfy the classification."""
    rng = random.Random(23)
    analyzed = 0
    while analyzed < 200:
        try:
            E = new_curve(*(rng.randint(-20, 20) for _ in range(5)))
        except SingularCurveError:
            continue
        report = analyze(E)
        assert report.flags.passed, (E.coefficients, report.flags.failures())
        analyzed += 1


def _order_two_family(s):
    return new_curve(0, 1, 0, s * s, 0)


PREDICTOR_FAMILIES = [
    (C(2), order_two_fields, _order_two_family),
    (C(4), order_four_fields, lambda s: tate_curve(-s * s, 4)),
    (C(6), order_six_fields, lambda s: tate_curve(-s * s, 6)),
    (C(8), order_eight_fields, lambda s: tate_curve(Fraction(s * s, s * s + 1), 8)),
]


@pytest.mark.slow
@pytest.mark.parametrize("G, predictor, family", PREDICTOR_FAMILIES)
def test_predictors_match_generic_halving(G, predictor, family):
    """Test closed-form growth fields equal the halving fields of (0, 0) for s = 1..20."""
    compared = 0
    for s in range(1, 21):
        try:
            E = family(s)
        except DomainError:
            continue
        if torsion_over_Q(E).structure != G:
            continue
        B, iso = to_b_form(E)
        generic = halving_fields(B, iso.map_point(E.point(0, 0)))
        predicted = predictor(E)
        assert predicted == generic, (s, predicted, generic)
        assert len(predicted) == 2
        compared += 1
    assert compared >= 10


@pytest.mark.slow
def test_torsion_is_stable_outside_growth_fields(fixture_rows):
    """Test ten random squarefree D outside each fixture growth set leave G unchanged."""
    rng = random.Random(37)
    labels = [d for d in range(-200, 201) if d != 1 and is_squarefree(d)]
    for row in fixture_rows:
        growth = set(row.expected_growth.labels)
        for D in rng.sample([d for d in labels if d not in growth], 10):
            H = torsion_over_quadratic(row.curve, D).structure
            assert H == row.expected_G, (row.label, D, H)
