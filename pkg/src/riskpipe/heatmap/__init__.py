"""Context-sensitive heatmap model: scales, risks, slices, grading, polar SVG."""

from .adjust import NDSlice, adjust_impact, adjust_likelihood, compute_slice
from .context import (
    ContextContribution,
    ContextDimension,
    ContextState,
    DimensionKind,
    ImpactMode,
    RiskObject,
)
from .grading import AcceptanceClass, GradingPolicy, default_policy, grade
from .io import dump_risk, load_risk, risk_from_json, risk_to_json
from .polar import render_polar
from .scales import (
    Level,
    OrdinalScale,
    bin_level_score,
    bin_metric,
    round_half_up,
    validate_scale,
)

__all__ = [
    "AcceptanceClass",
    "ContextContribution",
    "ContextDimension",
    "ContextState",
    "DimensionKind",
    "GradingPolicy",
    "ImpactMode",
    "Level",
    "NDSlice",
    "OrdinalScale",
    "RiskObject",
    "adjust_impact",
    "adjust_likelihood",
    "bin_level_score",
    "bin_metric",
    "compute_slice",
    "default_policy",
    "dump_risk",
    "grade",
    "load_risk",
    "render_polar",
    "risk_from_json",
    "risk_to_json",
    "round_half_up",
    "validate_scale",
]
