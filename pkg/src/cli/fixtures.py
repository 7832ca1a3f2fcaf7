"""
Fixture files of curves with their expected torsion growth.

One row per line, fields separated by ``|``::

    label | a1,a2,a3,a4,a6 | G | D:nxm D:nxm ... | E(F_S) | d

Blank lines and ``#`` comments are skipped. Growth records keep the order
they are written in; comparisons use the canonical order of GrowthSet.
"""

from pathlib import Path
from typing import List, Union

from pydantic import BaseModel, Field, ValidationError, field_validator

from src.core.curve import Curve, new_curve
from src.errors import DomainError, FixtureError
from src.growth.models import GrowthRecord, GrowthSet
from src.logging_config import get_logger
from src.torsion.groups import GroupStructure

logger = get_logger(__name__)

FIELD_SEPARATOR = "|"
EMPTY_RECORDS = "-"


class FixtureRow(BaseModel):
    """A curve and the growth data expected for it."""

    label: str = Field(..., min_length=1, examples=["19a2"])

    coefficients: List[int] = Field(
        ..., min_length=5, max_length=5, examples=[[0, 1, 1, -769, -8470]]
    )

    expected_G: GroupStructure = Field(..., examples=[{"n": 1, "m": 1}])

    expected_records: List[GrowthRecord] = Field(
        default_factory=list, description="Growth records in file order"
    )

    expected_tower_torsion: GroupStructure = Field(..., examples=[{"n": 1, "m": 3}])

    expected_degree: int = Field(..., ge=1, examples=[2])

    @field_validator("coefficients")
    def validate_nonsingular(cls, v):
        try:
            new_curve(*v)
        except DomainError as e:
            raise ValueError(str(e)) from e
        return v

    @field_validator("expected_degree")
    def validate_power_of_two(cls, v):
        if v & (v - 1):
            raise ValueError(f"Degree must be a power of two, got {v}")
        return v

    @property
    def curve(self) -> Curve:
        return new_curve(*self.coefficients)

    @property
    def expected_growth(self) -> GrowthSet:
        return GrowthSet(records=list(self.expected_records))

    def to_line(self) -> str:
        records = " ".join(f"{r.D}:{r.H.code}" for r in self.expected_records)
        return f" {FIELD_SEPARATOR} ".join(
            [
                self.label,
                ",".join(str(a) for a in self.coefficients),
                self.expected_G.code,
                records or EMPTY_RECORDS,
                self.expected_tower_torsion.code,
                str(self.expected_degree),
            ]
        )


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError as e:
        raise DomainError(f"{what} is not an integer: {text!r}") from e


def _parse_record(text: str) -> GrowthRecord:
    D, sep, H = text.partition(":")
    if not sep:
        raise DomainError(f"Growth record must look like D:nxm, got {text!r}")
    try:
        return GrowthRecord(D=_parse_int(D, "Field label"), H=GroupStructure.parse(H))
    except ValidationError as e:
        raise DomainError(f"Invalid growth record {text!r}: {e.errors()[0]['msg']}") from e


def parse_row(line: str) -> FixtureRow:
    fields = [f.strip() for f in line.split(FIELD_SEPARATOR)]
    if len(fields) != 6:
        raise DomainError(f"Expected 6 fields, got {len(fields)}")
    label, coefficients, G, records, tower, degree = fields
    record_texts = [] if records == EMPTY_RECORDS else records.split()
    try:
        return FixtureRow(
            label=label,
            coefficients=[_parse_int(a, "Coefficient") for a in coefficients.split(",")],
            expected_G=GroupStructure.parse(G),
            expected_records=[_parse_record(r) for r in record_texts],
            expected_tower_torsion=GroupStructure.parse(tower),
            expected_degree=_parse_int(degree, "Degree"),
        )
    except ValidationError as e:
        error = e.errors()[0]
        location = ".".join(str(part) for part in error["loc"])
        raise DomainError(f"{location}: {error['msg']}") from e


def load_fixture(path: Union[str, Path]) -> list[FixtureRow]:
    """Parse a fixture file; errors name the line and, when known, the row label."""
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as e:
        raise FixtureError(f"Cannot read fixture {path}: {e}") from e

    rows: list[FixtureRow] = []
    seen: dict[str, int] = {}
    for number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        label = line.split(FIELD_SEPARATOR, 1)[0].strip() or "?"
        try:
            row = parse_row(line)
        except DomainError as e:
            raise FixtureError(f"{path}:{number}: row '{label}': {e}") from e
        if row.label in seen:
            raise FixtureError(
                f"{path}:{number}: duplicate label '{row.label}' (first on line {seen[row.label]})"
            )
        seen[row.label] = number
        rows.append(row)

    if not rows:
        logger.warning(f"Fixture {path} has no rows")
    logger.debug(f"Loaded {len(rows)} rows from {path}")
    return rows


def find_row(rows: list[FixtureRow], label: str) -> FixtureRow:
    for row in rows:
        if row.label == label:
            return row
    raise FixtureError(
        f"Curve '{label}' not found. Available curves: {[row.label for row in rows]}"
    )