from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.fields.rationals import SquarefreeLabel, label_sort_key
from src.torsion.groups import GroupStructure, sorted_groups


def record_sort_key(record: "GrowthRecord") -> tuple:
    return label_sort_key(record.D), record.H.sort_key()


class GrowthRecord(BaseModel):
    """A quadratic field Q(sqrt(D)) over which the torsion grows to H."""

    model_config = ConfigDict(frozen=True)

    D: SquarefreeLabel = Field(
        ...,
        description="Squarefree label of the quadratic field, never 1",
        examples=[-3],
    )

    H: GroupStructure = Field(
        ...,
        description="Torsion subgroup over Q(sqrt(D))",
        examples=[{"n": 1, "m": 3}],
    )

    @field_validator("D")
    def validate_not_one(cls, v):
        if v == 1:
            raise ValueError("D = 1 does not give a quadratic field")
        return v

    def __str__(self):
        return f"{self.H}@{self.D}"


class GrowthSet(BaseModel):
    """
    The growth of a curve: one record per quadratic field where torsion grows.

    Records are kept sorted by |D| (negative first at equal |D|) and then by
    group, so equal sets compare and serialize identically.
    """

    model_config = ConfigDict(frozen=True)

    records: List[GrowthRecord] = Field(
        default_factory=list,
        description="Growth records in canonical order",
    )

    @field_validator("records")
    def validate_records(cls, v):
        labels = [r.D for r in v]
        if len(set(labels)) != len(labels):
            raise ValueError(f"Field labels must be distinct, got {labels}")
        if len(v) > 4:
            raise ValueError(f"Torsion grows over at most four quadratic fields, got {len(v)}")
        return sorted(v, key=record_sort_key)

    @classmethod
    def of(cls, pairs) -> "GrowthSet":
        """From (D, H) pairs."""
        return cls(records=[GrowthRecord(D=D, H=H) for D, H in pairs])

    @property
    def labels(self) -> list[int]:
        return [r.D for r in self.records]

    @property
    def pattern(self) -> tuple[GroupStructure, ...]:
        """The multiset of grown groups, in canonical group order."""
        return tuple(sorted_groups(r.H for r in self.records))

    def __str__(self):
        return "[" + ", ".join(str(r) for r in self.records) + "]"


class VerificationFlags(BaseModel):
    """Outcome of checking a report against the classification tables."""

    growth_groups_allowed: bool = Field(
        ..., description="Every grown group is reachable from the rational torsion group"
    )
    growth_counts_allowed: bool = Field(
        ..., description="Each grown group occurs an allowed number of times"
    )
    growth_pattern_allowed: bool = Field(
        ..., description="The multiset of grown groups is an allowed pattern"
    )
    field_count_bounded: bool = Field(
        ..., description="Torsion grows over at most four quadratic fields"
    )
    tower_group_allowed: bool = Field(
        ..., description="Torsion over the compositum is a possible multiquadratic torsion group"
    )
    tower_group_constraint: bool = Field(
        ..., description="Torsion over the compositum respects the limits set by the rational torsion"
    )
    minimal_degree_respected: bool = Field(
        ..., description="Large non-cyclic compositum groups appear only in large enough degree"
    )
    cyclotomic_fields_respected: bool = Field(
        ..., description="Full 3- and 4-torsion appear only over Q(sqrt(-3)) and Q(sqrt(-1))"
    )
    embedding_respected: bool = Field(
        ..., description="The rational torsion group embeds in every grown group"
    )
    unique_noncyclic_growth: bool = Field(
        ..., description="Even cyclic torsion gains full 2-torsion over exactly one field"
    )

    exceptional_shape: bool = Field(
        False, description="Growth pattern for which the compositum group is not determined"
    )
    unseen_tower_group: bool = Field(
        False, description="Compositum group with no example among the bundled curves"
    )

    def failures(self) -> list[str]:
        """Names of the failing checks; informational flags never fail."""
        informational = {"exceptional_shape", "unseen_tower_group"}
        return [
            name
            for name, value in self.model_dump().items()
            if name not in informational and not value
        ]

    @property
    def passed(self) -> bool:
        return not self.failures()


class AnalysisReport(BaseModel):
    """Torsion growth of one curve over all quadratic fields and their compositum."""

    model_config = ConfigDict(frozen=True)

    label: Optional[str] = Field(
        None,
        description="Curve label when the curve comes from a fixture",
        examples=["19a2"],
    )

    coefficients: List[str] = Field(
        ...,
        description="Weierstrass coefficients a1, a2, a3, a4, a6 as rational strings",
        examples=[["0", "1", "1", "-769", "-8470"]],
    )

    rational_torsion: GroupStructure = Field(
        ..., description="Torsion subgroup over Q", examples=[{"n": 1, "m": 1}]
    )

    growth: GrowthSet = Field(
        default_factory=GrowthSet, description="Quadratic fields where torsion grows"
    )

    composite_field: List[int] = Field(
        default_factory=list,
        description="Independent generators of the compositum of the growth fields",
        examples=[[-3]],
    )

    composite_torsion: GroupStructure = Field(
        ..., description="Torsion subgroup over the compositum", examples=[{"n": 1, "m": 3}]
    )

    degree: int = Field(..., ge=1, description="Degree of the compositum over Q", examples=[2])

    flags: Optional[VerificationFlags] = Field(
        None, description="Classification checks; absent until the report is verified"
    )

    @model_validator(mode="after")
    def check_degree(self):
        if self.degree != 1 << len(self.composite_field):
            raise ValueError(
                f"Degree {self.degree} does not match {len(self.composite_field)} generators"
            )
        return self

    def with_flags(self, flags: VerificationFlags) -> "AnalysisReport":
        return self.model_copy(update={"flags": flags})
