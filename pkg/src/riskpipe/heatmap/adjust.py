"""Context-dependent adjustment of base estimates, and 2-D slices.

Likelihood adjusts additively in level-score space. Impact adjusts
additively in metric units with a floor at zero; level-shift style
contributions are first converted to a metric delta by moving the base
value's bin index and taking the midpoint of the target bin.

Sums use math.fsum so that decimal contribution sets (0.6+0.8+0.4) land on
the exactly-rounded result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .context import ContextContribution, ContextState, ImpactMode, RiskObject
from .grading import AcceptanceClass, GradingPolicy, grade
from .scales import Level, OrdinalScale, bin_level_score, bin_metric, round_half_up


def _matching(contributions, state: ContextState):
    assignments = state.as_dict()
    return [c for c in contributions if assignments.get(c.dimension) == c.level]


def adjust_likelihood(x_base: float,
                      contributions: list[ContextContribution] | tuple[ContextContribution, ...],
                      state: ContextState) -> float:
    """x_base plus the sum of matching likelihood deltas (unclamped)."""
    deltas = [c.delta_x for c in _matching(contributions, state)]
    return math.fsum([x_base, *deltas])


def adjust_impact(y_base: float,
                  contributions: list[ContextContribution] | tuple[ContextContribution, ...],
                  state: ContextState,
                  y_scale: OrdinalScale) -> float:
    """max(0, y_base + sum of matching impact deltas).

    Metric-mode contributions add directly. Level-shift contributions are
    aggregated into one total shift of y_base's bin index; the resulting
    delta is midpoint(target bin) - y_base.
    """
    matching = _matching(contributions, state)
    deltas = [c.delta_y_metric for c in matching if c.impact_mode is ImpactMode.METRIC]
    shifts = [c.delta_y_levels for c in matching if c.impact_mode is ImpactMode.LEVEL_SHIFT]
    if shifts:
        base_level = bin_metric(y_base, y_scale)
        target_idx = round_half_up(base_level.index + math.fsum(shifts))
        target_idx = max(0, min(target_idx, len(y_scale.levels) - 1))
        deltas.append(y_scale.levels[target_idx].midpoint() - y_base)
    return max(0.0, math.fsum([y_base, *deltas]))


@dataclass(frozen=True)
class NDSlice:
    """The 2-D likelihood x impact view of a risk at one context state."""

    risk_id: str
    state: ContextState
    x_adj: float
    y_adj_metric: float
    x_level: Level
    y_level: Level
    grade: AcceptanceClass

    def to_json(self) -> dict:
        return {
            "riskId": self.risk_id,
            "state": self.state.to_json(),
            "xAdj": self.x_adj,
            "yAdjMetric": self.y_adj_metric,
            "xLevel": {"name": self.x_level.name, "index": self.x_level.index},
            "yLevel": {"name": self.y_level.name, "index": self.y_level.index},
            "grade": {"name": self.grade.name, "color": self.grade.color},
        }


def compute_slice(risk: RiskObject, state: ContextState, policy: GradingPolicy) -> NDSlice:
    """Adjust both axes, bin them, and grade the resulting cell.

    Pure in its inputs: identical arguments always produce an identical
    slice. The state must cover every declared dimension exactly once.
    """
    risk.check_state(state)
    x_adj = adjust_likelihood(risk.x_base, risk.contributions, state)
    y_adj = adjust_impact(risk.y_base, risk.contributions, state, risk.y_scale)
    x_level = bin_level_score(x_adj, risk.x_scale)
    y_level = bin_metric(y_adj, risk.y_scale)
    return NDSlice(
        risk_id=risk.id,
        state=state,
        x_adj=x_adj,
        y_adj_metric=y_adj,
        x_level=x_level,
        y_level=y_level,
        grade=grade(x_level, y_level, policy),
    )
