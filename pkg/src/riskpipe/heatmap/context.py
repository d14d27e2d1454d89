"""Risk objects, context dimensions, and context-dependent contributions.

A risk carries a base likelihood estimate (a level-score real on its X
scale) and a base impact estimate (in Y metric units). Context dimensions
describe the operating situation; contributions say how a particular
dimension level shifts likelihood and impact.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from ..errors import validation_error
from .scales import OrdinalScale

LOSS_RATE_TOLERANCE = 1e-9


class DimensionKind(str, enum.Enum):
    X_CONTEXT = "X_context"   # shifts likelihood; injected as a cause node
    Y_CONTEXT = "Y_context"   # shapes impact; injected on the consequence chain
    BOTH = "both"


class ImpactMode(str, enum.Enum):
    METRIC = "metric"         # deltaY in Y metric units
    LEVEL_SHIFT = "levelShift"  # deltaY in level indices on the Y scale


@dataclass(frozen=True)
class ContextDimension:
    name: str
    scale: OrdinalScale
    kind: DimensionKind = DimensionKind.X_CONTEXT


@dataclass(frozen=True)
class ContextContribution:
    """Adjustment attached to one (dimension, level) pair.

    Exactly one of delta_y_metric / delta_y_levels is set. When loss_rate
    and exposure are both given, delta_y_metric must equal their product
    (an impact estimate derived from loss rate x exposure minutes).
    """

    dimension: str
    level: str
    delta_x: float = 0.0
    impact_mode: ImpactMode = ImpactMode.METRIC
    delta_y_metric: float | None = None
    delta_y_levels: float | None = None
    loss_rate: float | None = None
    exposure: float | None = None

    def __post_init__(self):
        metric_set = self.delta_y_metric is not None
        shift_set = self.delta_y_levels is not None
        if metric_set == shift_set:
            raise validation_error(
                f"contribution {self.dimension}/{self.level}: exactly one of "
                "delta_y_metric and delta_y_levels must be set"
            )
        if self.impact_mode is ImpactMode.METRIC and not metric_set:
            raise validation_error(
                f"contribution {self.dimension}/{self.level}: metric mode requires delta_y_metric"
            )
        if self.impact_mode is ImpactMode.LEVEL_SHIFT and not shift_set:
            raise validation_error(
                f"contribution {self.dimension}/{self.level}: levelShift mode requires delta_y_levels"
            )
        if self.loss_rate is not None and self.exposure is not None:
            derived = self.loss_rate * self.exposure
            if self.delta_y_metric is None or not math.isclose(
                self.delta_y_metric, derived, rel_tol=0.0, abs_tol=LOSS_RATE_TOLERANCE
            ):
                raise validation_error(
                    f"contribution {self.dimension}/{self.level}: delta_y_metric "
                    f"{self.delta_y_metric} != loss_rate*exposure {derived}"
                )

    @staticmethod
    def from_loss_rate(dimension: str, level: str, delta_x: float,
                       loss_rate: float, exposure: float) -> "ContextContribution":
        return ContextContribution(
            dimension=dimension, level=level, delta_x=delta_x,
            impact_mode=ImpactMode.METRIC, delta_y_metric=loss_rate * exposure,
            loss_rate=loss_rate, exposure=exposure,
        )


@dataclass(frozen=True)
class ContextState:
    """One level assignment per context dimension (a point in context space)."""

    assignments: tuple[tuple[str, str], ...]  # (dimension name, level name)

    @staticmethod
    def of(mapping: dict[str, str]) -> "ContextState":
        return ContextState(tuple(mapping.items()))

    def as_dict(self) -> dict[str, str]:
        return dict(self.assignments)

    def level_for(self, dimension: str) -> str | None:
        return self.as_dict().get(dimension)

    def key(self) -> str:
        """Canonical 'dim=Level,dim=Level' form (sorted by dimension)."""
        return ",".join(f"{d}={l}" for d, l in sorted(self.assignments))

    @staticmethod
    def parse(text: str) -> "ContextState":
        """Parse the CLI form 'dim=Level,dim=Level'."""
        pairs = []
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "=" not in chunk:
                raise validation_error(f"bad context assignment {chunk!r}, expected dim=Level")
            dim, level = chunk.split("=", 1)
            pairs.append((dim.strip(), level.strip()))
        return ContextState(tuple(pairs))

    def to_json(self) -> dict:
        return self.as_dict()


@dataclass(frozen=True)
class RiskObject:
    id: str
    title: str
    x_base: float                 # level-score real on the X scale
    y_base: float                 # Y metric units
    x_scale: OrdinalScale
    y_scale: OrdinalScale
    context_dims: tuple[ContextDimension, ...] = field(default_factory=tuple)
    contributions: tuple[ContextContribution, ...] = field(default_factory=tuple)
    incident_window: float = 10.0  # minutes

    def __post_init__(self):
        max_score = len(self.x_scale.levels) - 1
        if not 0.0 <= self.x_base <= max_score:
            raise validation_error(
                f"risk {self.id!r}: x_base {self.x_base} outside [0, {max_score}]"
            )
        if self.y_base < 0:
            raise validation_error(f"risk {self.id!r}: y_base must be >= 0")
        dims = {d.name: d for d in self.context_dims}
        if len(dims) != len(self.context_dims):
            raise validation_error(f"risk {self.id!r}: duplicate context dimension names")
        for contrib in self.contributions:
            dim = dims.get(contrib.dimension)
            if dim is None:
                raise validation_error(
                    f"risk {self.id!r}: contribution references unknown dimension "
                    f"{contrib.dimension!r}"
                )
            if not dim.scale.has_level(contrib.level):
                raise validation_error(
                    f"risk {self.id!r}: contribution references unknown level "
                    f"{contrib.level!r} on dimension {contrib.dimension!r}"
                )

    def dimension(self, name: str) -> ContextDimension:
        for dim in self.context_dims:
            if dim.name == name:
                return dim
        raise validation_error(f"risk {self.id!r} has no context dimension {name!r}")

    def check_state(self, state: ContextState) -> None:
        """Reject states that do not cover every dimension exactly once."""
        seen: set[str] = set()
        declared = {d.name: d for d in self.context_dims}
        for dim_name, level_name in state.assignments:
            if dim_name not in declared:
                raise validation_error(
                    f"state references unknown dimension {dim_name!r}"
                )
            if dim_name in seen:
                raise validation_error(f"state assigns dimension {dim_name!r} twice")
            if not declared[dim_name].scale.has_level(level_name):
                raise validation_error(
                    f"state assigns unknown level {level_name!r} to dimension {dim_name!r}"
                )
            seen.add(dim_name)
        missing = sorted(set(declared) - seen)
        if missing:
            raise validation_error(f"state missing dimensions: {', '.join(missing)}")

    def matching_contributions(self, state: ContextState) -> tuple[ContextContribution, ...]:
        assignments = state.as_dict()
        return tuple(
            c for c in self.contributions if assignments.get(c.dimension) == c.level
        )
