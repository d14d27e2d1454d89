"""Payload builders shared by the REST service and the CLI.

Both front ends delegate here so a CLI subcommand and its endpoint
counterpart produce the same JSON value for the same store state.
"""

from __future__ import annotations

from ..bayes import DagModel, Evidence, Intervention, Posterior, infer, whatif
from ..bowtie import BowtieGraph
from ..errors import EngineError, validation_error
from ..heatmap import (
    ContextState,
    GradingPolicy,
    RiskObject,
    compute_slice,
    render_polar,
    risk_to_json,
)
from ..transform import TransformResult, trace_lookup
from ..triage import TemporalCriticality, TriageCriteria, evaluate, rank


def risk_payload(risk: RiskObject, revision: int) -> dict:
    return {"revision": revision, **risk_to_json(risk)}


def risk_list_payload(entries: list[tuple[str, int]]) -> dict:
    return {"risks": [{"id": rid, "revision": rev} for rid, rev in entries]}


def slice_payload(risk: RiskObject, state: ContextState, policy: GradingPolicy) -> dict:
    return compute_slice(risk, state, policy).to_json()


def polar_payload(risk: RiskObject, state: ContextState, policy: GradingPolicy) -> bytes:
    return render_polar(compute_slice(risk, state, policy), risk)


def triage_payload(risks: list[RiskObject], body: dict, policy: GradingPolicy) -> dict:
    """Evaluate triage criteria over the given risks and rank the decisions.

    Body: nonAcceptableClasses, contextStates (list of dim->level maps),
    optional riskIds filter, optional temporalCriticality map riskId->level.
    """
    if not isinstance(body, dict):
        raise validation_error("triage body must be an object")
    classes = frozenset(body.get("nonAcceptableClasses", [policy.classes[-1].name]))
    states = tuple(
        ContextState.of(entry) for entry in body.get("contextStates", [])
    )
    criticality = body.get("temporalCriticality", {})
    ids = body.get("riskIds")
    selected = [r for r in risks if ids is None or r.id in ids]

    decisions = []
    for risk in selected:
        criteria = TriageCriteria(
            non_acceptable_classes=classes,
            context_states=states,
            temporal_criticality=TemporalCriticality(
                criticality.get(risk.id, "low")
            ),
        )
        decisions.append(evaluate(risk, criteria, policy))
    # the report lists the deep-dive candidates: material decisions only
    material = [d for d in decisions if d.material]
    return {"decisions": [d.to_json() for d in rank(material)]}


def bowtie_report_payload(risk_id: str, revision: int, graph: BowtieGraph) -> dict:
    return {
        "riskId": risk_id,
        "revision": revision,
        "bowtieId": graph.id,
        "nodes": len(graph.nodes),
        "edges": len(graph.edges),
    }


def dag_payload(result: TransformResult, revision: int, doc: dict) -> dict:
    return {"revision": revision, "dag": doc}


def activation_payload(result: TransformResult,
                       bowtie: BowtieGraph | None = None) -> dict:
    """Activation node listing: ids, states, any forced state, and a label.

    A node counts as forced when it is a parentless point mass, which is
    exactly what do-style surgery leaves behind.
    """
    entries = []
    for node in result.dag.activation_nodes():
        forced = None
        dist = node.prior
        if dist is not None:
            for state, p in zip(node.states, dist):
                if p == 1.0:
                    forced = state
        label = node.id
        origin = trace_lookup(result.trace, node.id)
        if isinstance(origin, str) and bowtie is not None and bowtie.has_node(origin):
            name = bowtie.node(origin).name
            if name:
                label = name
        entries.append({
            "id": node.id,
            "states": list(node.states),
            "forced": forced,
            "label": label,
        })
    return {"activationNodes": entries}


def trace_payload(result: TransformResult, dag_node_id: str) -> dict:
    origin = trace_lookup(result.trace, dag_node_id)
    if isinstance(origin, str):
        return {"dagNodeId": dag_node_id, "origin": origin, "synthesized": None}
    return {"dagNodeId": dag_node_id, "origin": None, "synthesized": origin.rule.value}


def _posterior_json(posterior: Posterior) -> dict:
    return {"posteriors": posterior.to_json()}


def infer_payload(dag: DagModel, evidence_map: dict) -> dict:
    return _posterior_json(infer(dag, Evidence.of(dict(evidence_map))))


def whatif_payload(dag: DagModel, evidence_map: dict, intervention_map: dict,
                   require_activation: bool = True) -> dict:
    return _posterior_json(whatif(
        dag,
        Evidence.of(dict(evidence_map)),
        Intervention.of(dict(intervention_map), require_activation),
    ))


def parse_state_param(value: str) -> ContextState:
    state = ContextState.parse(value)
    if not state.assignments:
        raise EngineError("VALIDATION", "state parameter must assign at least one dimension")
    return state
