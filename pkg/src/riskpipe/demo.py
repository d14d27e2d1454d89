"""Canonical demo scenario: an instant payments gateway outage.

A faulty production change rolled out under peak load degrades an
active/active payments gateway until transactions are lost. The module
builds the matching risk object (scales, context dimensions, loss-rate
based contributions), the Bowtie with its three controls, and the states
used throughout the tests, CLI walkthrough, and README.

Barrier lineup:
  ft-1  validation gate on the change-complexity cause path (preventive)
  ft-2  canary release with automated rollback before the top event (preventive)
  et-1  health-based traffic steering guarding the lost-transactions branch
        (mitigative)
"""

from __future__ import annotations

import math

from .bowtie import (
    BarrierClass,
    BarrierSide,
    BowtieGraph,
    BowtieNode,
    GateType,
    NodeKind,
)
from .heatmap import (
    ContextContribution,
    ContextDimension,
    ContextState,
    DimensionKind,
    GradingPolicy,
    OrdinalScale,
    RiskObject,
    default_policy,
)

INF = math.inf


def likelihood_scale() -> OrdinalScale:
    return OrdinalScale.from_bounds("likelihood", "events/year", [
        ("Rare", 0.0, 1.0),
        ("Unlikely", 1.0, 3.0),
        ("Likely", 3.0, 13.0),
        ("Almost certain", 13.0, INF),
    ])


def impact_scale() -> OrdinalScale:
    return OrdinalScale.from_bounds("impact", "lost transactions", [
        ("Minor", 0.0, 11.0),
        ("Moderate", 11.0, 101.0),
        ("Major", 101.0, 1001.0),
        ("Severe", 1001.0, INF),
    ])


def load_scale() -> OrdinalScale:
    return OrdinalScale.from_bounds("operational-load", "% capacity", [
        ("Off-Peak", 0.0, 40.0),
        ("Normal", 40.0, 70.0),
        ("Peak", 70.0, 90.0),
        ("Surge", 90.0, INF),
    ])


def change_complexity_scale() -> OrdinalScale:
    return OrdinalScale.from_bounds("change-complexity", "review score", [
        ("Low", 0.0, 1.0),
        ("Medium", 1.0, 2.0),
        ("High", 2.0, INF),
    ])


def third_party_scale() -> OrdinalScale:
    return OrdinalScale.from_bounds("third-party-health", "status", [
        ("Healthy", 0.0, 1.0),
        ("Degraded", 1.0, 2.0),
        ("Failed", 2.0, INF),
    ])


def disturbance_scale() -> OrdinalScale:
    return OrdinalScale.from_bounds("disturbance", "level", [
        ("Baseline", 0.0, 1.0),
        ("Elevated", 1.0, INF),
    ])


def gateway_risk(include_other: bool = True) -> RiskObject:
    """The gateway risk with its loss-rate based context contributions.

    `include_other=False` drops the background-disturbance dimension,
    leaving the three dimensions that are woven into the Bowtie.
    """
    dims = [
        ContextDimension("load", load_scale(), DimensionKind.BOTH),
        ContextDimension("change-complexity", change_complexity_scale(), DimensionKind.X_CONTEXT),
        ContextDimension("third-party", third_party_scale(), DimensionKind.X_CONTEXT),
    ]
    contributions = [
        ContextContribution.from_loss_rate("load", "Peak", 0.6, loss_rate=120.0, exposure=3.0),
        ContextContribution.from_loss_rate("change-complexity", "High", 0.8, loss_rate=90.0, exposure=2.0),
        ContextContribution.from_loss_rate("third-party", "Degraded", 0.4, loss_rate=110.0, exposure=3.0),
    ]
    if include_other:
        dims.append(ContextDimension("other", disturbance_scale(), DimensionKind.Y_CONTEXT))
        contributions.append(
            ContextContribution.from_loss_rate("other", "Baseline", 0.0, loss_rate=15.0, exposure=2.0)
        )
    return RiskObject(
        id="gateway",
        title="Instant payments gateway outage",
        x_base=1.0,  # Unlikely
        y_base=0.0,
        x_scale=likelihood_scale(),
        y_scale=impact_scale(),
        context_dims=tuple(dims),
        contributions=tuple(contributions),
        incident_window=10.0,
    )


def peak_state(risk: RiskObject | None = None) -> ContextState:
    """The escalating state: peak load, complex change, degraded third party."""
    risk = risk or gateway_risk()
    levels = {
        "load": "Peak",
        "change-complexity": "High",
        "third-party": "Degraded",
        "other": "Baseline",
    }
    return ContextState(tuple(
        (d.name, levels[d.name]) for d in risk.context_dims
    ))


def off_peak_state(risk: RiskObject | None = None) -> ContextState:
    risk = risk or gateway_risk()
    levels = {
        "load": "Off-Peak",
        "change-complexity": "Low",
        "third-party": "Healthy",
        "other": "Baseline",
    }
    return ContextState(tuple(
        (d.name, levels[d.name]) for d in risk.context_dims
    ))


def gateway_policy() -> GradingPolicy:
    return default_policy()


def gateway_bowtie() -> BowtieGraph:
    """The deep-dive Bowtie for the gateway risk.

    Left side: the three context threats feed an OR gate; ft-1 guards the
    change-complexity path, ft-2 guards the gate-to-top-event edge. Right
    side: a fork routes the impact either through et-1 into lost
    transactions or into degraded service.
    """
    nodes = (
        BowtieNode(
            "ctx-load", NodeKind.THREAT, name="load context",
            theta=0.5, context_origin=("load", None),
        ),
        BowtieNode(
            "ctx-change-complexity", NodeKind.THREAT, name="change-complexity context",
            theta=0.7, context_origin=("change-complexity", None),
        ),
        BowtieNode(
            "ctx-third-party", NodeKind.THREAT, name="third-party context",
            theta=0.4, context_origin=("third-party", None),
        ),
        BowtieNode("causes-or", NodeKind.GATE, name="cause aggregation", gate_type=GateType.OR),
        BowtieNode(
            "ft-1", NodeKind.BARRIER, name="Config/routing/migration validation gate",
            barrier_class=BarrierClass.PREVENTIVE, barrier_side=BarrierSide.FT,
            activation=True, lam=0.3,
        ),
        BowtieNode(
            "ft-2", NodeKind.BARRIER, name="Canary release with automated rollback",
            barrier_class=BarrierClass.PREVENTIVE, barrier_side=BarrierSide.FT,
            activation=True, lam=0.2,
        ),
        BowtieNode("outage", NodeKind.TOP_EVENT, name="Instant payments gateway outage"),
        BowtieNode("impact-fork", NodeKind.FORK, name="impact routing"),
        BowtieNode(
            "et-1", NodeKind.BARRIER, name="Health-based traffic steering & isolation",
            barrier_class=BarrierClass.MITIGATIVE, barrier_side=BarrierSide.ET,
            activation=True, lam=0.25,
        ),
        BowtieNode("lost-transactions", NodeKind.CONSEQUENCE, name="Lost transactions"),
        BowtieNode("degraded-service", NodeKind.CONSEQUENCE, name="Degraded service"),
    )
    edges = (
        ("ctx-load", "causes-or"),
        ("ctx-change-complexity", "ft-1"),
        ("ft-1", "causes-or"),
        ("ctx-third-party", "causes-or"),
        ("causes-or", "ft-2"),
        ("ft-2", "outage"),
        ("outage", "impact-fork"),
        ("impact-fork", "et-1"),
        ("et-1", "lost-transactions"),
        ("impact-fork", "degraded-service"),
    )
    return BowtieGraph(
        id="gateway-outage", nodes=nodes, edges=edges, top_event_id="outage"
    )
