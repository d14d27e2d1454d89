"""Acceptance grading over binned likelihood/impact levels.

The grade score is (x.index+1) * (y.index+1), mapped through ordered class
score ranges. The product form keeps the grade monotone in each axis.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import validation_error
from .scales import Level


@dataclass(frozen=True)
class AcceptanceClass:
    name: str
    color: str
    score_lo: int  # inclusive
    score_hi: int  # inclusive

    def to_json(self) -> dict:
        return {
            "name": self.name, "color": self.color,
            "scoreRange": [self.score_lo, self.score_hi],
        }


@dataclass(frozen=True)
class GradingPolicy:
    classes: tuple[AcceptanceClass, ...]  # ascending severity

    def __post_init__(self):
        if not self.classes:
            raise validation_error("grading policy requires at least one class")
        prev_hi = None
        for cls in self.classes:
            if cls.score_lo > cls.score_hi:
                raise validation_error(f"class {cls.name!r} has an empty score range")
            if prev_hi is not None and cls.score_lo != prev_hi + 1:
                raise validation_error(
                    f"class score ranges must partition the score range; "
                    f"{cls.name!r} starts at {cls.score_lo}, expected {prev_hi + 1}"
                )
            prev_hi = cls.score_hi
        names = [c.name for c in self.classes]
        if len(set(names)) != len(names):
            raise validation_error("grading policy class names must be unique")

    @property
    def min_score(self) -> int:
        return self.classes[0].score_lo

    @property
    def max_score(self) -> int:
        return self.classes[-1].score_hi

    def class_by_name(self, name: str) -> AcceptanceClass:
        for cls in self.classes:
            if cls.name == name:
                return cls
        raise validation_error(f"grading policy has no class {name!r}")

    def severity(self, cls: AcceptanceClass) -> int:
        return self.classes.index(cls)

    def to_json(self) -> dict:
        return {"classes": [c.to_json() for c in self.classes]}

    @staticmethod
    def from_json(doc: dict) -> "GradingPolicy":
        return GradingPolicy(tuple(
            AcceptanceClass(
                name=c["name"], color=c["color"],
                score_lo=int(c["scoreRange"][0]), score_hi=int(c["scoreRange"][1]),
            )
            for c in doc["classes"]
        ))


def default_policy() -> GradingPolicy:
    """Four acceptance classes over the 4x4 product score range 1..16."""
    return GradingPolicy((
        AcceptanceClass("acceptable", "#2e7d32", 1, 2),
        AcceptanceClass("tolerable", "#f9a825", 3, 6),
        AcceptanceClass("elevated", "#ef6c00", 7, 11),
        AcceptanceClass("non-acceptable", "#c62828", 12, 16),
    ))


def grade(x_level: Level, y_level: Level, policy: GradingPolicy) -> AcceptanceClass:
    """Grade a binned (likelihood, impact) cell through the policy."""
    score = (x_level.index + 1) * (y_level.index + 1)
    score = max(policy.min_score, min(score, policy.max_score))
    for cls in policy.classes:
        if cls.score_lo <= score <= cls.score_hi:
            return cls
    raise validation_error(f"score {score} not covered by grading policy")
