"""Bowtie normalization ahead of the DAG mapping.

Two rewrites, both idempotent:
  - a top event with several direct cause edges gets an explicit OR gate
  - gates left with a single parent are collapsed (edge rewired through)
Barriers already live as standalone nodes in this representation, so no
rewrite is needed for them.
"""

from __future__ import annotations

from ..errors import EngineError
from ..bowtie.model import BowtieGraph, BowtieNode, GateType, NodeKind, validate

# normalization may legitimately see (and fix) under-populated gates
_FIXABLE = {"GATE_ARITY"}


def _fresh_id(graph: BowtieGraph, base: str) -> str:
    if not graph.has_node(base):
        return base
    i = 2
    while graph.has_node(f"{base}-{i}"):
        i += 1
    return f"{base}-{i}"


def is_normalized(graph: BowtieGraph) -> bool:
    if len(graph.parents(graph.top_event_id)) > 1:
        return False
    return not any(
        n.kind is NodeKind.GATE and len(graph.parents(n.id)) < 2 for n in graph.nodes
    )


def normalize(graph: BowtieGraph) -> BowtieGraph:
    """Return the normalized graph; refuses structurally invalid input."""
    report = validate(graph)
    if not report.ok and not report.codes() <= _FIXABLE:
        raise EngineError(
            "VALIDATION",
            f"cannot normalize invalid bowtie {graph.id!r}",
            details=report.to_json(),
        )

    # explicit OR gate for a multi-cause top event
    top_id = graph.top_event_id
    parents = graph.parents(top_id)
    if len(parents) > 1:
        gate_id = _fresh_id(graph, f"{top_id}-or")
        gate = BowtieNode(gate_id, NodeKind.GATE, name="causes", gate_type=GateType.OR)
        graph = (
            graph.without_edges({(p, top_id) for p in parents})
            .with_nodes(gate)
            .with_edges(*[(p, gate_id) for p in parents], (gate_id, top_id))
        )

    # collapse single-parent gates (repeat: collapsing may expose another)
    while True:
        degenerate = next(
            (
                n for n in graph.nodes
                if n.kind is NodeKind.GATE and len(graph.parents(n.id)) == 1
            ),
            None,
        )
        if degenerate is None:
            break
        parent = graph.parents(degenerate.id)[0]
        children = graph.children(degenerate.id)
        removed = {(parent, degenerate.id)} | {(degenerate.id, c) for c in children}
        graph = BowtieGraph(
            id=graph.id,
            nodes=tuple(n for n in graph.nodes if n.id != degenerate.id),
            edges=tuple(e for e in graph.edges if e not in removed)
            + tuple((parent, c) for c in children),
            top_event_id=graph.top_event_id,
        )

    result = validate(graph)
    if not result.ok:
        raise EngineError(
            "VALIDATION",
            f"normalization left bowtie {graph.id!r} invalid",
            details=result.to_json(),
        )
    return graph
