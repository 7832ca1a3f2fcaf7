"""Static classification data, loaded from YAML and checked for consistency."""

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Union

import yaml

from src.config import get_config
from src.errors import DomainError, InconsistencyError
from src.logging_config import get_logger
from src.torsion.groups import GroupStructure, sorted_groups

logger = get_logger(__name__)

Pattern = tuple[GroupStructure, ...]


def pattern_of(groups) -> Pattern:
    """A multiset of groups in canonical order."""
    return tuple(sorted_groups(groups))


@dataclass(frozen=True)
class ClassificationTables:
    rational_torsion: frozenset[GroupStructure]
    quadratic_torsion_all_fields: frozenset[GroupStructure]
    quadratic_torsion: frozenset[GroupStructure]
    quadratic_growth: dict[GroupStructure, frozenset[GroupStructure]]
    growth_counts: dict[tuple[GroupStructure, GroupStructure], frozenset[int]]
    growth_patterns: dict[GroupStructure, frozenset[Pattern]]
    multiquadratic_torsion: frozenset[GroupStructure]
    noncyclic_tower_limits: dict[GroupStructure, frozenset[GroupStructure]]
    cyclic_excluded_tower_groups: frozenset[GroupStructure]
    minimal_tower_degrees: dict[GroupStructure, int]
    cyclotomic_labels: dict[int, int]
    exceptional_shapes: frozenset[tuple[GroupStructure, Pattern]]
    unseen_tower_groups: frozenset[GroupStructure]

    def growth_options(self, G: GroupStructure) -> list[GroupStructure]:
        """Groups G can grow into, excluding G itself."""
        return sorted_groups(self.quadratic_growth.get(G, frozenset()) - {G})

    def allowed_counts(self, G: GroupStructure, H: GroupStructure) -> frozenset[int]:
        return self.growth_counts.get((G, H), frozenset())

    def patterns_for(self, G: GroupStructure) -> list[Pattern]:
        """Allowed growth multisets for G, the empty one first."""
        return [()] + sorted(
            self.growth_patterns.get(G, frozenset()),
            key=lambda p: (len(p), [h.sort_key() for h in p]),
        )

    def validate(self) -> None:
        """Check the tables against each other; raises InconsistencyError."""
        problems = []
        if not self.rational_torsion <= self.quadratic_torsion <= self.quadratic_torsion_all_fields:
            problems.append("torsion lists are not nested")
        for G, targets in self.quadratic_growth.items():
            if G not in self.rational_torsion:
                problems.append(f"growth listed for {G}, which is not a rational torsion group")
            if G not in targets:
                problems.append(f"growth targets of {G} omit {G}")
            if not targets <= self.quadratic_torsion:
                problems.append(f"growth targets of {G} leave the quadratic torsion list")
            for H in targets:
                if not G.embeds_in(H):
                    problems.append(f"{G} does not embed in its growth target {H}")
        for (G, H), counts in self.growth_counts.items():
            if H not in self.quadratic_growth.get(G, frozenset()) or H == G:
                problems.append(f"count entry ({G}, {H}) is not a growth")
            if not counts or min(counts) < 1 or max(counts) > 4:
                problems.append(f"count entry ({G}, {H}) is outside 1..4")
        for G, patterns in self.growth_patterns.items():
            for pattern in patterns:
                if len(pattern) > 4:
                    problems.append(f"pattern {pattern} for {G} has more than four fields")
                for H, k in Counter(pattern).items():
                    if H == G or H not in self.quadratic_growth.get(G, frozenset()):
                        problems.append(f"pattern for {G} contains non-growth {H}")
                    elif k not in self.allowed_counts(G, H):
                        problems.append(f"pattern for {G} uses {H} {k} times")
        if problems:
            raise InconsistencyError("Classification tables are inconsistent: " + "; ".join(problems))

    def as_document(self) -> dict:
        """A JSON-friendly dump keyed by group codes."""

        def codes(groups):
            return [g.code for g in sorted_groups(groups)]

        return {
            "rational_torsion": codes(self.rational_torsion),
            "quadratic_torsion_all_fields": codes(self.quadratic_torsion_all_fields),
            "quadratic_torsion": codes(self.quadratic_torsion),
            "quadratic_growth": {
                G.code: codes(Hs) for G, Hs in sorted(self.quadratic_growth.items(), key=_key)
            },
            "growth_counts": {
                f"{G.code}->{H.code}": sorted(counts)
                for (G, H), counts in sorted(
                    self.growth_counts.items(),
                    key=lambda item: (item[0][0].sort_key(), item[0][1].sort_key()),
                )
            },
            "growth_patterns": {
                G.code: [[H.code for H in p] for p in self.patterns_for(G)]
                for G in sorted_groups(self.rational_torsion)
            },
            "multiquadratic_torsion": codes(self.multiquadratic_torsion),
        }


def _key(item):
    return item[0].sort_key()


def _group(value) -> GroupStructure:
    if isinstance(value, int):
        return GroupStructure.cyclic(value)
    return GroupStructure.parse(value)


def _groups(values) -> frozenset[GroupStructure]:
    return frozenset(_group(v) for v in values)


def load_tables(path: Union[str, Path]) -> ClassificationTables:
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text())
    except (OSError, yaml.YAMLError) as e:
        raise DomainError(f"Cannot read classification data from {path}: {e}") from e
    try:
        tables = ClassificationTables(
            rational_torsion=_groups(raw["rational_torsion"]),
            quadratic_torsion_all_fields=_groups(raw["quadratic_torsion_all_fields"]),
            quadratic_torsion=_groups(raw["quadratic_torsion"]),
            quadratic_growth={
                _group(G): _groups(Hs) for G, Hs in raw["quadratic_growth"].items()
            },
            growth_counts={
                (_group(G), _group(H)): frozenset(counts)
                for G, row in raw["growth_counts"].items()
                for H, counts in row.items()
            },
            growth_patterns={
                _group(G): frozenset(pattern_of(_group(h) for h in p) for p in patterns)
                for G, patterns in raw["growth_patterns"].items()
            },
            multiquadratic_torsion=_groups(raw["multiquadratic_torsion"]),
            noncyclic_tower_limits={
                _group(G): _groups(Ts) for G, Ts in raw["noncyclic_tower_limits"].items()
            },
            cyclic_excluded_tower_groups=_groups(raw["cyclic_excluded_tower_groups"]),
            minimal_tower_degrees={
                _group(T): int(d) for T, d in raw["minimal_tower_degrees"].items()
            },
            cyclotomic_labels={int(k): int(v) for k, v in raw["cyclotomic_labels"].items()},
            exceptional_shapes=frozenset(
                (_group(s["base"]), pattern_of(_group(h) for h in s["pattern"]))
                for s in raw["exceptional_shapes"]
            ),
            unseen_tower_groups=_groups(raw["unseen_tower_groups"]),
        )
    except KeyError as e:
        raise DomainError(f"Classification data in {path} is missing section {e}") from e
    tables.validate()
    logger.debug(f"Loaded classification tables from {path}")
    return tables


@lru_cache()
def get_tables() -> ClassificationTables:
    """Tables from the configured path, loaded once."""
    return load_tables(get_config().classification_path)
