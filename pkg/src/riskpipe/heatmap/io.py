"""JSON persistence for risk objects.

Document layout: a top-level `risk` object holding `scales` (x, y),
`contextDimensions`, `contributions`, and `base`. Serialization is
deterministic: key order is fixed by construction.
"""

from __future__ import annotations

import json

from ..errors import validation_error
from .context import (
    ContextContribution,
    ContextDimension,
    DimensionKind,
    ImpactMode,
    RiskObject,
)
from .scales import OrdinalScale


def _contribution_to_json(c: ContextContribution) -> dict:
    doc: dict = {
        "dimension": c.dimension,
        "level": c.level,
        "deltaX": c.delta_x,
        "impactMode": c.impact_mode.value,
    }
    if c.delta_y_metric is not None:
        doc["deltaY_metric"] = c.delta_y_metric
    if c.delta_y_levels is not None:
        doc["deltaY_levels"] = c.delta_y_levels
    if c.loss_rate is not None:
        doc["lossRate"] = c.loss_rate
    if c.exposure is not None:
        doc["exposure"] = c.exposure
    return doc


def _contribution_from_json(doc: dict) -> ContextContribution:
    return ContextContribution(
        dimension=doc["dimension"],
        level=doc["level"],
        delta_x=float(doc.get("deltaX", 0.0)),
        impact_mode=ImpactMode(doc.get("impactMode", "metric")),
        delta_y_metric=(
            float(doc["deltaY_metric"]) if "deltaY_metric" in doc else None
        ),
        delta_y_levels=(
            float(doc["deltaY_levels"]) if "deltaY_levels" in doc else None
        ),
        loss_rate=float(doc["lossRate"]) if "lossRate" in doc else None,
        exposure=float(doc["exposure"]) if "exposure" in doc else None,
    )


def risk_to_json(risk: RiskObject) -> dict:
    return {
        "risk": {
            "id": risk.id,
            "title": risk.title,
            "scales": {"x": risk.x_scale.to_json(), "y": risk.y_scale.to_json()},
            "contextDimensions": [
                {"name": d.name, "kind": d.kind.value, "scale": d.scale.to_json()}
                for d in risk.context_dims
            ],
            "contributions": [_contribution_to_json(c) for c in risk.contributions],
            "base": {
                "xBase": risk.x_base,
                "yBase": risk.y_base,
                "incidentWindow": risk.incident_window,
            },
        }
    }


def risk_from_json(doc: dict) -> RiskObject:
    if "risk" not in doc:
        raise validation_error("risk document missing top-level 'risk' object")
    body = doc["risk"]
    try:
        base = body["base"]
        return RiskObject(
            id=body["id"],
            title=body.get("title", body["id"]),
            x_base=float(base["xBase"]),
            y_base=float(base["yBase"]),
            x_scale=OrdinalScale.from_json(body["scales"]["x"]),
            y_scale=OrdinalScale.from_json(body["scales"]["y"]),
            context_dims=tuple(
                ContextDimension(
                    name=d["name"],
                    scale=OrdinalScale.from_json(d["scale"]),
                    kind=DimensionKind(d.get("kind", "X_context")),
                )
                for d in body.get("contextDimensions", [])
            ),
            contributions=tuple(
                _contribution_from_json(c) for c in body.get("contributions", [])
            ),
            incident_window=float(base.get("incidentWindow", 10.0)),
        )
    except KeyError as exc:
        raise validation_error(f"risk document missing field {exc}") from exc


def dump_risk(risk: RiskObject) -> bytes:
    return (json.dumps(risk_to_json(risk), indent=2) + "\n").encode("utf-8")


def load_risk(data: bytes | str) -> RiskObject:
    return risk_from_json(json.loads(data))
