"""Injection of heatmap context factors into a Bowtie.

Likelihood-side dimensions become threat nodes wired into the top event's
OR gate (created when absent). Impact-side dimensions become chain nodes
spliced onto the path from the top event toward the consequences, in
dimension declaration order. Injected nodes carry their context origin,
which also makes repeated injection idempotent.
"""

from __future__ import annotations

import logging
import re

from ..errors import EngineError, validation_error
from ..heatmap import DimensionKind, RiskObject
from .model import BowtieGraph, BowtieNode, GateType, NodeKind, validate

log = logging.getLogger(__name__)


def _slug(name: str) -> str:
    slug = re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")
    return slug or "dim"


def _fresh_id(graph: BowtieGraph, base: str) -> str:
    if not graph.has_node(base):
        return base
    i = 2
    while graph.has_node(f"{base}-{i}"):
        i += 1
    return f"{base}-{i}"


def _origin_dims(graph: BowtieGraph, kinds: tuple[NodeKind, ...]) -> set[str]:
    return {
        n.context_origin[0]
        for n in graph.nodes
        if n.context_origin is not None and n.kind in kinds
    }


def _resolve_cause_gate(graph: BowtieGraph) -> tuple[BowtieGraph, str]:
    """Find the OR gate governing the top event's causes, creating one if
    needed. Walks through barriers between the gate and the top event; an
    AND-only cause structure gets an OR gate inserted above it."""
    top_id = graph.top_event_id
    parents = graph.parents(top_id)

    anchor = top_id  # node whose incoming cause edges the OR gate takes over
    if len(parents) == 1:
        pred = parents[0]
        while graph.node(pred).kind is NodeKind.BARRIER:
            anchor = pred
            pred = graph.parents(pred)[0]
        pred_node = graph.node(pred)
        if pred_node.kind is NodeKind.GATE and pred_node.gate_type is GateType.OR:
            return graph, pred
        # AND gate or a direct threat: insert an OR gate above it
        old_edge = (pred, anchor)
        gate_id = _fresh_id(graph, f"{top_id}-or")
        gate = BowtieNode(gate_id, NodeKind.GATE, name="causes", gate_type=GateType.OR)
        graph = (
            graph.without_edges({old_edge})
            .with_nodes(gate)
            .with_edges((pred, gate_id), (gate_id, anchor))
        )
        return graph, gate_id

    # multiple direct cause edges: gather them all under a new OR gate
    gate_id = _fresh_id(graph, f"{top_id}-or")
    gate = BowtieNode(gate_id, NodeKind.GATE, name="causes", gate_type=GateType.OR)
    old_edges = {(p, top_id) for p in parents}
    graph = (
        graph.without_edges(old_edges)
        .with_nodes(gate)
        .with_edges(*[(p, gate_id) for p in parents], (gate_id, top_id))
    )
    return graph, gate_id


def _chain_insertion_point(graph: BowtieGraph) -> str:
    """Last already-injected chain node after the top event, else the top."""
    current = graph.top_event_id
    while True:
        children = graph.children(current)
        if len(children) == 1:
            child = graph.node(children[0])
            if child.kind is NodeKind.CONSEQUENCE and child.context_origin is not None:
                current = child.id
                continue
        return current


def inject_context_factors(graph: BowtieGraph, risk: RiskObject) -> BowtieGraph:
    """Return a new graph with the risk's context dimensions woven in."""
    report = validate(graph)
    if not report.ok:
        raise EngineError(
            "VALIDATION", f"bowtie {graph.id!r} is invalid", details=report.to_json()
        )
    if not risk.context_dims:
        log.warning("risk %s has no context dimensions; bowtie unchanged", risk.id)
        return graph

    x_dims = [
        d for d in risk.context_dims
        if d.kind in (DimensionKind.X_CONTEXT, DimensionKind.BOTH)
    ]
    y_dims = [
        d for d in risk.context_dims
        if d.kind in (DimensionKind.Y_CONTEXT, DimensionKind.BOTH)
    ]

    injected_threat_dims = _origin_dims(graph, (NodeKind.THREAT,))
    new_x = [d for d in x_dims if d.name not in injected_threat_dims]
    if new_x:
        graph, gate_id = _resolve_cause_gate(graph)
        for dim in new_x:
            tid = _fresh_id(graph, f"ctx-{_slug(dim.name)}")
            graph = graph.with_nodes(
                BowtieNode(
                    tid, NodeKind.THREAT, name=f"{dim.name} context",
                    context_origin=(dim.name, None),
                )
            ).with_edges((tid, gate_id))

    injected_chain_dims = _origin_dims(graph, (NodeKind.CONSEQUENCE,))
    for dim in y_dims:
        if dim.name in injected_chain_dims:
            continue
        point = _chain_insertion_point(graph)
        cid = _fresh_id(graph, f"impact-{_slug(dim.name)}")
        downstream = {(point, c) for c in graph.children(point)}
        graph = (
            graph.without_edges(downstream)
            .with_nodes(BowtieNode(
                cid, NodeKind.CONSEQUENCE, name=f"{dim.name} impact",
                context_origin=(dim.name, None),
            ))
            .with_edges((point, cid), *[(cid, v) for _, v in sorted(downstream)])
        )

    result = validate(graph)
    if not result.ok:
        raise validation_error(
            f"context injection left bowtie {graph.id!r} invalid",
            details=result.to_json(),
        )
    return graph
