"""Triage: decide which risks are material and rank them for deep dive.

A risk is material iff at least one evaluated context state grades into a
non-acceptable class. Temporal criticality never gates materiality; it
only scales the priority used for ranking.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import validation_error
from .heatmap import ContextState, GradingPolicy, RiskObject, compute_slice


class TemporalCriticality(str, enum.Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


DEFAULT_WEIGHTS: dict[TemporalCriticality, float] = {
    TemporalCriticality.LOW: 1.0,
    TemporalCriticality.MEDIUM: 2.0,
    TemporalCriticality.HIGH: 3.0,
}


@dataclass(frozen=True)
class TriageCriteria:
    non_acceptable_classes: frozenset[str]
    context_states: tuple[ContextState, ...]
    temporal_criticality: TemporalCriticality = TemporalCriticality.LOW
    weights: tuple[tuple[TemporalCriticality, float], ...] = tuple(
        DEFAULT_WEIGHTS.items()
    )

    def weight(self) -> float:
        return dict(self.weights)[self.temporal_criticality]


@dataclass(frozen=True)
class TriageDecision:
    risk_id: str
    material: bool
    triggering_states: tuple[ContextState, ...]
    priority: float
    rationale: str

    def to_json(self) -> dict:
        return {
            "riskId": self.risk_id,
            "material": self.material,
            "triggeringStates": [s.to_json() for s in self.triggering_states],
            "priority": self.priority,
            "rationale": self.rationale,
        }


def evaluate(risk: RiskObject, criteria: TriageCriteria,
             policy: GradingPolicy) -> TriageDecision:
    """Evaluate every context state in the criteria against the policy."""
    if not criteria.context_states:
        raise validation_error("triage criteria require at least one context state")
    for name in criteria.non_acceptable_classes:
        policy.class_by_name(name)  # unknown class name -> validation error

    triggering: list[ContextState] = []
    notes: list[str] = []
    for state in criteria.context_states:
        nd_slice = compute_slice(risk, state, policy)
        if nd_slice.grade.name in criteria.non_acceptable_classes:
            triggering.append(state)
            notes.append(f"{state.key()} -> {nd_slice.grade.name}")

    material = bool(triggering)
    priority = len(triggering) * criteria.weight() if material else 0.0
    rationale = (
        "exceeds acceptance in: " + "; ".join(notes)
        if material
        else "all evaluated states grade acceptable"
    )
    return TriageDecision(
        risk_id=risk.id,
        material=material,
        triggering_states=tuple(triggering),
        priority=priority,
        rationale=rationale,
    )


def rank(decisions: list[TriageDecision]) -> list[TriageDecision]:
    """Stable descending sort by priority; ties break by risk id ascending."""
    return sorted(decisions, key=lambda d: (-d.priority, d.risk_id))
