"""Tests for the fixture format and the command-line entry point."""

import pytest

from src.cli.fixtures import find_row, load_fixture, parse_row
from src.cli.main import main
from src.cli.rendering import RunDocument, TablesDocument, compare_row
from src.errors import FixtureError
from src.growth import AnalysisReport, analyze, check_report, composite_field
from src.torsion.groups import GroupStructure

ROW_19A2 = "19a2 | 0,1,1,-769,-8470 | 1x1 | -3:1x3 | 1x3 | 2"


def test_analyze_prints_report(capsys):
    """Test analyze prints G and the check summary for y^2 = x^3 + 1."""
    assert main(["analyze", "--coeffs", "0,0,0,0,1"]) == 0
    out = capsys.readouterr().out
    assert "G = C6" in out
    assert "checks: all passed" in out


def test_analyze_json(capsys):
    """Test analyze --json emits a RunDocument with the growth of 19a2."""
    assert main(["analyze", "--coeffs", "0,1,1,-769,-8470", "--json"]) == 0
    document = RunDocument.model_validate_json(capsys.readouterr().out)
    assert document.command == "analyze"
    report = document.reports[0]
    assert report.rational_torsion == GroupStructure.cyclic(1)
    assert report.growth.labels == [-3]


def test_analyze_from_fixture(capsys, write_fixture):
    """Test analyze --label reads coefficients from a fixture."""
    path = write_fixture(ROW_19A2)
    assert main(["analyze", "--label", "19a2", "--fixture", path]) == 0
    assert "19a2 [0, 1, 1, -769, -8470]" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "--coeffs", "0,0,0,0,0"],
        ["analyze", "--coeffs", "0,0,0,1"],
        ["analyze", "--coeffs=x,0,0,0,1"],
        ["batch", "--jobs", "0"],
        ["unknown-command"],
    ],
)
def test_usage_errors(argv):
    """Test bad input exits with status 2."""
    assert main(argv) == 2


def test_unknown_label(write_fixture):
    """Test a label missing from the fixture is a usage error."""
    path = write_fixture(ROW_19A2)
    assert main(["analyze", "--label", "11a1", "--fixture", path]) == 2


def test_missing_fixture(tmp_path):
    """Test a missing fixture file is a usage error."""
    assert main(["batch", "--fixture", str(tmp_path / "missing.txt")]) == 2


def test_tables_json(capsys):
    """Test tables --json emits a TablesDocument."""
    assert main(["tables", "--json"]) == 0
    document = TablesDocument.model_validate_json(capsys.readouterr().out)
    assert document.schema_version == "1"
    assert len(document.rational_torsion) == 15
    assert "2x8" in document.quadratic_torsion


def test_tables_text(capsys):
    """Test the text tables list growth from C1."""
    assert main(["tables"]) == 0
    assert "C1 -> {C1, C3, C5, C7, C9}" in capsys.readouterr().out


def test_verify_single_row(capsys, write_fixture):
    """Test verify-paper passes a correct row."""
    path = write_fixture("# one row", "", ROW_19A2)
    assert main(["verify-paper", "--fixture", path]) == 0
    out = capsys.readouterr().out
    assert "[ok]   19a2" in out
    assert "1/1 rows verified" in out


def test_verify_reports_mismatch(capsys, write_fixture):
    """Test verify-paper exits 1 when a row disagrees with the computation."""
    path = write_fixture(ROW_19A2.replace("-3:1x3", "5:1x3"))
    assert main(["verify-paper", "--fixture", path]) == 1
    out = capsys.readouterr().out
    assert "[FAIL] 19a2" in out
    assert "0/1 rows verified" in out


def test_verify_empty_fixture(capsys, write_fixture):
    """Test verify-paper on a fixture with no rows."""
    path = write_fixture("# nothing here")
    assert main(["verify-paper", "--fixture", path]) == 0
    assert "0/0 rows verified" in capsys.readouterr().out


def test_batch_json(capsys, write_fixture):
    """Test batch --json keeps fixture order with two workers."""
    path = write_fixture(ROW_19A2, "36a3 | 0,0,0,0,-27 | 1x2 | -3:2x6 | 2x6 | 2")
    assert main(["batch", "--fixture", path, "--json", "--jobs", "2"]) == 0
    document = RunDocument.model_validate_json(capsys.readouterr().out)
    assert [r.label for r in document.reports] == ["19a2", "36a3"]


def test_parse_row():
    """Test a fixture row parses and prints back to the same row."""
    row = parse_row(ROW_19A2)
    assert row.label == "19a2"
    assert row.coefficients == [0, 1, 1, -769, -8470]
    assert row.expected_growth.labels == [-3]
    assert row.expected_degree == 2
    assert parse_row(row.to_line()) == row


def test_fixture_error_names_row(write_fixture):
    """Test fixture errors name the offending row."""
    path = write_fixture(ROW_19A2.replace("-3:1x3", "abc:1x3"))
    with pytest.raises(FixtureError, match="row '19a2'"):
        load_fixture(path)


@pytest.mark.parametrize(
    "line",
    [
        "19a2 | 0,1,1,-769,-8470 | 1x1 | -3:1x3 | 1x3",
        "19a2 | 0,0,0,0,0 | 1x1 | - | 1x1 | 1",
        "19a2 | 0,1,1,-769,-8470 | 1x1 | -3:1x3 | 1x3 | 3",
        "19a2 | 0,1,1,-769,-8470 | 1x1 | 4:1x3 | 1x3 | 2",
    ],
)
def test_fixture_rejects_bad_rows(write_fixture, line):
    """Test rows with missing fields, singular curves, wrong degrees or bad labels are rejected."""
    with pytest.raises(FixtureError):
        load_fixture(write_fixture(line))


def test_fixture_rejects_duplicate_labels(write_fixture):
    """Test a label may appear only once."""
    path = write_fixture(ROW_19A2, ROW_19A2)
    with pytest.raises(FixtureError, match="duplicate label"):
        load_fixture(path)


def test_find_row_unknown_label(fixture_rows):
    """Test looking up an unknown label fails."""
    with pytest.raises(FixtureError, match="not found"):
        find_row(fixture_rows, "no-such-curve")


def test_bundled_fixture(fixture_rows):
    """Test the bundled fixture has every row and the expected 19a2 data."""
    assert len(fixture_rows) == 54
    row = find_row(fixture_rows, "19a2")
    assert row.expected_G == GroupStructure.cyclic(1)
    assert row.expected_tower_torsion == GroupStructure.cyclic(3)


def test_bundled_fixture_is_consistent(fixture_rows, tables):
    """Test every expected report satisfies the classification checks."""
    for row in fixture_rows:
        field = composite_field(row.expected_growth.labels)
        assert field.degree == row.expected_degree, row.label
        report = AnalysisReport(
            label=row.label,
            coefficients=[str(a) for a in row.coefficients],
            rational_torsion=row.expected_G,
            growth=row.expected_growth,
            composite_field=list(field.generators),
            composite_torsion=row.expected_tower_torsion,
            degree=row.expected_degree,
        )
        flags = check_report(report, tables, discriminant=row.curve.discriminant)
        assert flags.passed, (row.label, flags.failures())


def test_run_document_json_roundtrip(curve_19a2):
    """Test a RunDocument survives JSON serialization."""
    document = RunDocument(command="analyze", reports=[analyze(curve_19a2, label="19a2")])
    assert RunDocument.model_validate_json(document.model_dump_json()) == document


@pytest.mark.slow
def test_bundled_fixture_matches_computation(fixture_rows):
    """Test every bundled row against a full computation."""
    differences = {}
    for row in fixture_rows:
        outcome = compare_row(row, analyze(row.curve, label=row.label))
        if not outcome.passed:
            differences[row.label] = outcome.differences
    assert differences == {}


def test_verify_examples_alias(capsys, write_fixture):
    """Test verify-examples runs the same check as verify-paper."""
    path = write_fixture(ROW_19A2)
    assert main(["verify-examples", "--fixture", path]) == 0
    assert "1/1 rows verified" in capsys.readouterr().out
