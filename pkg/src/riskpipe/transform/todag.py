"""Deterministic Bowtie-to-DAG mapping with safe-state augmentation.

Mapping rules, applied to a normalized, valid Bowtie:
  - every cause-side node and right-side chain node becomes a binary event
    variable {false,true}; edge direction is preserved (cause -> effect)
  - gates get deterministic OR/AND tables; the `noisy` profile replaces OR
    semantics with a Noisy-OR over the threat influence values
  - barriers become root {works,fails} variables flagged as activation
    nodes; a barrier splitting edge (u,v) is re-expressed as the restored
    edge u->v plus the barrier as an extra parent of v, damping v's
    occurrence by the barrier's lambda when it works
  - forks become multiplexer variables over their branch targets: the
    first branch (canonical edge order) whose guarding barrier fails is
    taken; if every guard works the first unguarded branch is taken
  - terminal consequences collapse into one outcome variable
    `<topEvent>.safe` whose states are {safe, <consequences...>}; safe has
    probability 1 whenever the top event is false

Root priors default to the uniform distribution: the scope here is
structural transfer, not parameter estimation.

The transformation is a pure function: equal inputs produce equal models,
equal traces, and byte-identical exports.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..bayes import (
    BARRIER_STATES,
    EVENT_STATES,
    BayesNode,
    Cpt,
    DagModel,
    NoisyOrParams,
    apply_barrier_damping,
    cpt_and,
    cpt_noisy_or,
    cpt_or,
    damp_states,
    deterministic_cpt,
    insert_parent,
    prior,
)
from ..bowtie.model import BowtieGraph, BowtieNode, GateType, NodeKind, validate
from ..errors import EngineError
from .normalize import is_normalized

THREAT_PRIOR = (0.5, 0.5)
BARRIER_PRIOR = (0.5, 0.5)

PROFILES = ("deterministic", "noisy")


class TransformRule(str, enum.Enum):
    NODE_TRANSFER = "nodeTransfer"
    GATE_CPT = "gateCPT"
    BARRIER_PARENT = "barrierParent"
    FORK_LINEARIZATION = "forkLinearization"
    SAFE_STATE = "safeState"


@dataclass(frozen=True)
class TraceEntry:
    dag_node_id: str
    bowtie_node_id: str
    rule: TransformRule


@dataclass(frozen=True)
class SynthesizedMarker:
    """Stands in for a Bowtie origin on nodes the transform invented."""

    rule: TransformRule

    def __str__(self) -> str:
        return f"synthesized:{self.rule.value}"


@dataclass(frozen=True)
class TransformTrace:
    entries: tuple[TraceEntry, ...]
    synthesized: tuple[tuple[str, TransformRule], ...] = ()

    def bowtie_ids(self) -> set[str]:
        return {e.bowtie_node_id for e in self.entries}

    def dag_ids(self) -> set[str]:
        return {e.dag_node_id for e in self.entries} | {
            nid for nid, _ in self.synthesized
        }


def trace_lookup(trace: TransformTrace, dag_node_id: str) -> str | SynthesizedMarker:
    """Bowtie origin of a DAG node, or a marker for synthesized helpers."""
    for nid, rule in trace.synthesized:
        if nid == dag_node_id:
            return SynthesizedMarker(rule)
    for entry in trace.entries:
        if entry.dag_node_id == dag_node_id:
            return entry.bowtie_node_id
    raise EngineError("NOT_FOUND", f"trace has no DAG node {dag_node_id!r}")


@dataclass(frozen=True)
class TransformResult:
    dag: DagModel
    trace: TransformTrace
    profile: str


def _walk_up(graph: BowtieGraph, source: str) -> tuple[str, list[str]]:
    """Resolve an edge source through interrupting barriers.

    Returns (originating cause id, barriers crossed, closest-first)."""
    barriers: list[str] = []
    current = source
    while graph.node(current).kind is NodeKind.BARRIER:
        barriers.append(current)
        current = graph.parents(current)[0]
    return current, barriers


def _walk_down(graph: BowtieGraph, target: str) -> tuple[str, list[str]]:
    """Resolve an edge target through interrupting barriers.

    Returns (eventual target id, guard barriers crossed)."""
    guards: list[str] = []
    current = target
    while graph.node(current).kind is NodeKind.BARRIER:
        guards.append(current)
        current = graph.children(current)[0]
    return current, guards


def _theta(node: BowtieNode) -> float:
    return node.theta if node.theta is not None else 1.0


def _lambda(node: BowtieNode) -> float:
    return node.lam if node.lam is not None else 1.0


def to_dag(bowtie: BowtieGraph, profile: str = "deterministic") -> TransformResult:
    """Transform a normalized, valid Bowtie into a Bayesian-network DAG."""
    if profile not in PROFILES:
        raise EngineError("PROFILE", f"unknown transform profile {profile!r}")
    report = validate(bowtie)
    if not report.ok:
        raise EngineError(
            "VALIDATION",
            f"cannot transform invalid bowtie {bowtie.id!r}",
            details=report.to_json(),
        )
    if not is_normalized(bowtie):
        raise EngineError(
            "NORMALIZE_FIRST",
            f"bowtie {bowtie.id!r} must be normalized before transformation",
        )

    node_map = bowtie.node_map
    top_id = bowtie.top_event_id
    dag_nodes: dict[str, BayesNode] = {}
    entries: list[TraceEntry] = []
    fork_states: dict[str, tuple[str, ...]] = {}

    def active_condition(pred_id: str, selected_id: str):
        """Predicate on the predecessor's state: does it activate `selected_id`?"""
        pred = node_map[pred_id]
        if pred.kind is NodeKind.FORK:
            idx = fork_states[pred_id].index(selected_id)
            return lambda state: state == idx
        return lambda state: state == 1  # binary event: active iff true

    def cause_parents(node_id: str) -> tuple[list[str], list[str]]:
        """Cause parents (barrier-resolved, in-edge order, deduped) and the
        interrupting barriers (sorted)."""
        causes: list[str] = []
        barriers: list[str] = []
        for source in bowtie.parents(node_id):
            cause, crossed = _walk_up(bowtie, source)
            if cause not in causes:
                causes.append(cause)
            for b in crossed:
                if b not in barriers:
                    barriers.append(b)
        return causes, sorted(barriers)

    def with_damping(cpt: Cpt, parents: list[str], barriers: list[str],
                     damped_states: tuple[int, ...] | None = None) -> Cpt:
        for barrier_id in barriers:
            position = len(cpt.parent_cards)
            cpt = insert_parent(cpt, position, 2)
            lam = _lambda(node_map[barrier_id])
            if damped_states is None:
                cpt = apply_barrier_damping(cpt, position, lam)
            else:
                cpt = damp_states(cpt, position, lam, 0, damped_states)
            parents.append(barrier_id)
        return cpt

    # ---- barriers: root works/fails variables, activation flagged
    for node in bowtie.nodes:
        if node.kind is NodeKind.BARRIER:
            dag_nodes[node.id] = BayesNode(
                id=node.id, states=BARRIER_STATES, parents=(),
                cpt=prior(BARRIER_PRIOR), activation=node.activation,
            )
            entries.append(TraceEntry(node.id, node.id, TransformRule.BARRIER_PARENT))

    # ---- threats: root event variables
    for node in bowtie.nodes:
        if node.kind is NodeKind.THREAT:
            dag_nodes[node.id] = BayesNode(
                id=node.id, states=EVENT_STATES, parents=(), cpt=prior(THREAT_PRIOR),
            )
            entries.append(TraceEntry(node.id, node.id, TransformRule.NODE_TRANSFER))

    # ---- gates and the top event: OR/AND (or noisy-OR) plus barrier damping
    for node in bowtie.nodes:
        if node.kind not in (NodeKind.GATE, NodeKind.TOP_EVENT):
            continue
        causes, barriers = cause_parents(node.id)
        gate_type = node.gate_type if node.kind is NodeKind.GATE else GateType.OR
        if gate_type is GateType.AND:
            cpt = cpt_and(len(causes))
        elif profile == "noisy":
            thetas = {
                c: (_theta(node_map[c]) if node_map[c].kind is NodeKind.THREAT else 1.0)
                for c in causes
            }
            cpt = cpt_noisy_or(NoisyOrParams.of(thetas), causes)
        else:
            cpt = cpt_or(len(causes))
        parents = list(causes)
        cpt = with_damping(cpt, parents, barriers)
        dag_nodes[node.id] = BayesNode(
            id=node.id, states=EVENT_STATES, parents=tuple(parents), cpt=cpt,
        )
        rule = (
            TransformRule.GATE_CPT if node.kind is NodeKind.GATE
            else TransformRule.NODE_TRANSFER
        )
        entries.append(TraceEntry(node.id, node.id, rule))

    # ---- consequence side, walked top-down so fork states resolve in order
    order: list[str] = []
    stack = [top_id]
    while stack:
        current = stack.pop()
        for child in sorted(bowtie.children(current), reverse=True):
            if node_map[child].kind is not NodeKind.BARRIER:
                order.append(child)
                stack.append(child)
            else:
                eventual, _ = _walk_down(bowtie, child)
                order.append(eventual)
                stack.append(eventual)

    terminals = sorted(
        n.id for n in bowtie.nodes
        if n.kind is NodeKind.CONSEQUENCE and not bowtie.children(n.id)
    )

    for node_id in order:
        node = node_map[node_id]
        if node.kind is NodeKind.FORK:
            upstream, in_barriers = _walk_up(bowtie, bowtie.parents(node_id)[0])
            branches = []  # (target id, [guard barrier ids])
            for child in bowtie.children(node_id):  # canonical order
                target, guards = _walk_down(bowtie, child)
                branches.append((target, guards))
            states = ("none",) + tuple(target for target, _ in branches)
            fork_states[node_id] = states
            parents = [upstream]
            guard_positions: list[tuple[int, list[int]]] = []
            for bi, (_, guards) in enumerate(branches):
                positions = []
                for guard in guards:
                    parents.append(guard)
                    positions.append(len(parents) - 1)
                guard_positions.append((bi, positions))
            active = active_condition(upstream, node_id)
            cards = tuple(len(dag_nodes[p].states) for p in parents)

            def choose(cfg, _active=active, _gp=guard_positions, _branches=branches):
                if not _active(cfg[0]):
                    return 0
                for bi, positions in _gp:
                    if positions and any(cfg[pos] == 1 for pos in positions):
                        return 1 + bi
                for bi, (_, guards) in enumerate(_branches):
                    if not guards:
                        return 1 + bi
                return 0

            cpt = deterministic_cpt(len(states), cards, choose)
            damped = tuple(range(1, len(states)))
            cpt = with_damping(cpt, parents, sorted(in_barriers), damped)
            dag_nodes[node_id] = BayesNode(
                id=node_id, states=states, parents=tuple(parents), cpt=cpt,
            )
            entries.append(
                TraceEntry(node_id, node_id, TransformRule.FORK_LINEARIZATION)
            )
        elif node.kind is NodeKind.CONSEQUENCE and node_id not in terminals:
            upstream, in_barriers = _walk_up(bowtie, bowtie.parents(node_id)[0])
            active = active_condition(upstream, node_id)
            card = len(dag_nodes[upstream].states)
            cpt = deterministic_cpt(
                2, (card,), lambda cfg, _a=active: 1 if _a(cfg[0]) else 0
            )
            parents = [upstream]
            cpt = with_damping(cpt, parents, sorted(in_barriers))
            dag_nodes[node_id] = BayesNode(
                id=node_id, states=EVENT_STATES, parents=tuple(parents), cpt=cpt,
            )
            entries.append(TraceEntry(node_id, node_id, TransformRule.NODE_TRANSFER))

    # ---- outcome variable with the extra safe state
    outcome_id = f"{top_id}.safe"
    outcome_states = ("safe",) + tuple(terminals)
    parents = [top_id]
    pred_of: dict[str, str] = {}
    damping: list[tuple[int, str]] = []  # (outcome state index, barrier id)
    for ti, terminal in enumerate(terminals):
        upstream, crossed = _walk_up(bowtie, bowtie.parents(terminal)[0])
        pred_of[terminal] = upstream
        if upstream not in parents:
            parents.append(upstream)
        if node_map[upstream].kind is not NodeKind.FORK:
            # barriers directly guarding this consequence damp its state;
            # fork-branch guards were already consumed by the fork CPT
            for barrier_id in sorted(crossed):
                damping.append((1 + ti, barrier_id))
    activators = {
        terminal: (parents.index(pred_of[terminal]),
                   active_condition(pred_of[terminal], terminal))
        for terminal in terminals
    }
    cards = tuple(len(dag_nodes[p].states) for p in parents)

    def choose_outcome(cfg):
        if cfg[0] != 1:  # top event false -> safe, unconditionally
            return 0
        for ti, terminal in enumerate(terminals):
            pos, active = activators[terminal]
            if active(cfg[pos]):
                return 1 + ti
        return 0

    outcome_cpt = deterministic_cpt(len(outcome_states), cards, choose_outcome)
    for state_index, barrier_id in damping:
        position = len(outcome_cpt.parent_cards)
        outcome_cpt = insert_parent(outcome_cpt, position, 2)
        outcome_cpt = damp_states(
            outcome_cpt, position, _lambda(node_map[barrier_id]), 0, (state_index,)
        )
        parents.append(barrier_id)
    dag_nodes[outcome_id] = BayesNode(
        id=outcome_id, states=outcome_states, parents=tuple(parents), cpt=outcome_cpt,
    )
    for terminal in terminals:
        entries.append(TraceEntry(outcome_id, terminal, TransformRule.SAFE_STATE))

    model = DagModel(
        id=f"{bowtie.id}-{profile}",
        nodes=tuple(sorted(dag_nodes.values(), key=lambda n: n.id)),
    )
    topo = model.topological_ids()
    model = DagModel(id=model.id, nodes=tuple(dag_nodes[nid] for nid in topo))
    model.validate()

    trace = TransformTrace(
        entries=tuple(sorted(
            entries, key=lambda e: (e.dag_node_id, e.bowtie_node_id)
        )),
        synthesized=((outcome_id, TransformRule.SAFE_STATE),),
    )
    return TransformResult(dag=model, trace=trace, profile=profile)
