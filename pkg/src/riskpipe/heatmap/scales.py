"""Ordinal scales with contiguous half-open level ranges.

A level covers [lower, upper); the top level may be unbounded (upper=inf).
Binning a metric value is total: values below the first bound clamp to
level 0, values at or above the last bound clamp to the last level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import validation_error
from ..reporting import ValidationReport, Violation


@dataclass(frozen=True)
class Level:
    name: str
    lower: float
    upper: float  # exclusive; math.inf for an unbounded top level
    index: int

    def contains(self, value: float) -> bool:
        return self.lower <= value < self.upper

    def midpoint(self) -> float:
        """Representative metric value; lower bound for an unbounded level."""
        if math.isinf(self.upper):
            return self.lower
        return (self.lower + self.upper) / 2.0


@dataclass(frozen=True)
class OrdinalScale:
    name: str
    unit: str
    levels: tuple[Level, ...]

    @staticmethod
    def from_bounds(name: str, unit: str, level_defs: list[tuple[str, float, float]]) -> "OrdinalScale":
        """Build a scale from (name, lower, upper) tuples in level order."""
        levels = tuple(
            Level(name=lname, lower=lo, upper=hi, index=i)
            for i, (lname, lo, hi) in enumerate(level_defs)
        )
        scale = OrdinalScale(name=name, unit=unit, levels=levels)
        report = validate_scale(scale)
        if not report.ok:
            raise validation_error(
                f"scale {name!r} is invalid", details=report.to_json()
            )
        return scale

    def level_by_name(self, name: str) -> Level:
        for level in self.levels:
            if level.name == name:
                return level
        raise validation_error(f"scale {self.name!r} has no level {name!r}")

    def has_level(self, name: str) -> bool:
        return any(level.name == name for level in self.levels)

    def to_json(self) -> dict:
        # an unbounded top level serializes its upper bound as null
        return {
            "name": self.name,
            "unit": self.unit,
            "levels": [
                {
                    "name": lv.name,
                    "lower": lv.lower,
                    "upper": None if math.isinf(lv.upper) else lv.upper,
                    "index": lv.index,
                }
                for lv in self.levels
            ],
        }

    @staticmethod
    def from_json(doc: dict) -> "OrdinalScale":
        levels = tuple(
            Level(
                name=lv["name"],
                lower=float(lv["lower"]),
                upper=math.inf if lv.get("upper") is None else float(lv["upper"]),
                index=int(lv.get("index", i)),
            )
            for i, lv in enumerate(doc["levels"])
        )
        return OrdinalScale(name=doc["name"], unit=doc.get("unit", ""), levels=levels)


def validate_scale(scale: OrdinalScale) -> ValidationReport:
    """Check level count, ordering, contiguity, and name uniqueness."""
    violations: list[Violation] = []
    levels = scale.levels

    if len(levels) < 2:
        violations.append(
            Violation("LEVEL_COUNT", scale.name, "a scale requires at least 2 levels")
        )

    names = [lv.name for lv in levels]
    for name in sorted({n for n in names if names.count(n) > 1}):
        violations.append(
            Violation("NAME_UNIQUE", scale.name, f"duplicate level name {name!r}")
        )

    for i, lv in enumerate(levels):
        if lv.index != i:
            violations.append(
                Violation("INDEX_ORDER", lv.name, f"level index {lv.index} != position {i}")
            )
        if not lv.lower < lv.upper:
            violations.append(
                Violation("RANGE_EMPTY", lv.name, f"level range [{lv.lower}, {lv.upper}) is empty")
            )

    for prev, cur in zip(levels, levels[1:]):
        if cur.lower < prev.upper:
            violations.append(
                Violation(
                    "OVERLAP", cur.name,
                    f"range [{cur.lower}, {cur.upper}) overlaps previous [{prev.lower}, {prev.upper})",
                )
            )
        elif cur.lower > prev.upper:
            violations.append(
                Violation(
                    "GAP", cur.name,
                    f"gap between {prev.upper} and {cur.lower} breaks contiguity",
                )
            )
        if math.isinf(prev.upper):
            violations.append(
                Violation("UNBOUNDED_INNER", prev.name, "only the last level may be unbounded")
            )

    return ValidationReport(tuple(violations))


def bin_metric(value: float, scale: OrdinalScale) -> Level:
    """Map a metric value to its level, clamping outside the covered range."""
    levels = scale.levels
    if value < levels[0].lower:
        return levels[0]
    for level in levels:
        if level.contains(value):
            return level
    return levels[-1]


def round_half_up(value: float) -> int:
    """Round to nearest integer, .5 away from the floor (2.5 -> 3, -1.5 -> -1)."""
    return math.floor(value + 0.5)


def bin_level_score(score: float, scale: OrdinalScale) -> Level:
    """Bin an ordinal level-score real: round half-up, then clamp to [0, k-1]."""
    idx = round_half_up(score)
    idx = max(0, min(idx, len(scale.levels) - 1))
    return scale.levels[idx]
