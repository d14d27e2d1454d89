"""Bowtie graphs: fault-tree causes, a top event, event-tree consequences.

Structural conventions enforced by `validate`:
  - exactly one top event; the graph is acyclic
  - the left side (threats, gates, FT barriers) is a DAG converging on the
    top event; the right side (ET barriers, forks, consequences) is a tree
    rooted at it
  - barriers split exactly one edge (one incoming, one outgoing edge)
  - branching on the right happens only at fork nodes; right-side leaves
    are consequence nodes
Consequence-kind nodes with children act as chain (intermediate impact)
nodes; the out-degree-zero ones are the terminal consequences.

Graphs are canonical values: nodes sort by id and edges by (from, to) at
construction, so structurally equal graphs compare and serialize equal.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace

from ..errors import validation_error
from ..reporting import ValidationReport, Violation

ID_PATTERN = re.compile(r"^[a-z0-9-]+$")


class NodeKind(str, enum.Enum):
    THREAT = "threat"
    GATE = "gate"
    BARRIER = "barrier"
    TOP_EVENT = "topEvent"
    FORK = "fork"
    CONSEQUENCE = "consequence"


class GateType(str, enum.Enum):
    AND = "AND"
    OR = "OR"


class BarrierClass(str, enum.Enum):
    PREVENTIVE = "preventive"
    DETECTIVE = "detective"
    MITIGATIVE = "mitigative"
    CORRECTIVE = "corrective"


class BarrierSide(str, enum.Enum):
    FT = "FT"
    ET = "ET"


@dataclass(frozen=True)
class BowtieNode:
    id: str
    kind: NodeKind
    name: str = ""
    gate_type: GateType | None = None
    barrier_class: BarrierClass | None = None
    barrier_side: BarrierSide | None = None
    activation: bool = False
    lam: float | None = None    # barrier damping factor
    theta: float | None = None  # threat influence for noisy-OR
    context_origin: tuple[str, str | None] | None = None  # (dimension, level)


@dataclass(frozen=True)
class BowtieGraph:
    id: str
    nodes: tuple[BowtieNode, ...]
    edges: tuple[tuple[str, str], ...]
    top_event_id: str

    def __post_init__(self):
        object.__setattr__(
            self, "nodes", tuple(sorted(self.nodes, key=lambda n: n.id))
        )
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    def node(self, node_id: str) -> BowtieNode:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise validation_error(f"bowtie {self.id!r} has no node {node_id!r}")

    def has_node(self, node_id: str) -> bool:
        return any(n.id == node_id for n in self.nodes)

    @property
    def node_map(self) -> dict[str, BowtieNode]:
        return {n.id: n for n in self.nodes}

    def parents(self, node_id: str) -> list[str]:
        return [u for u, v in self.edges if v == node_id]

    def children(self, node_id: str) -> list[str]:
        return [v for u, v in self.edges if u == node_id]

    def with_nodes(self, *added: BowtieNode) -> "BowtieGraph":
        return replace(self, nodes=self.nodes + tuple(added))

    def with_edges(self, *added: tuple[str, str]) -> "BowtieGraph":
        return replace(self, edges=self.edges + tuple(added))

    def without_edges(self, removed: set[tuple[str, str]]) -> "BowtieGraph":
        return replace(
            self, edges=tuple(e for e in self.edges if e not in removed)
        )


def insert_barrier(graph: BowtieGraph, barrier: BowtieNode,
                   edge: tuple[str, str]) -> BowtieGraph:
    """Split `edge` with a barrier node: u -> barrier -> v."""
    if barrier.kind is not NodeKind.BARRIER:
        raise validation_error(f"node {barrier.id!r} is not a barrier")
    if edge not in graph.edges:
        raise validation_error(f"edge {edge} not present in bowtie {graph.id!r}")
    u, v = edge
    return (
        graph.without_edges({edge})
        .with_nodes(barrier)
        .with_edges((u, barrier.id), (barrier.id, v))
    )


def _reaches(graph: BowtieGraph, sources: set[str], forward: bool) -> set[str]:
    adjacency: dict[str, list[str]] = {}
    for u, v in graph.edges:
        adjacency.setdefault(u if forward else v, []).append(v if forward else u)
    seen = set(sources)
    stack = list(sources)
    while stack:
        for nxt in adjacency.get(stack.pop(), []):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def left_side(graph: BowtieGraph) -> set[str]:
    """Node ids with a path to the top event (excluding the top event)."""
    return _reaches(graph, {graph.top_event_id}, forward=False) - {graph.top_event_id}


def right_side(graph: BowtieGraph) -> set[str]:
    """Node ids reachable from the top event (excluding the top event)."""
    return _reaches(graph, {graph.top_event_id}, forward=True) - {graph.top_event_id}


def _find_cycle(graph: BowtieGraph) -> bool:
    indeg = {n.id: 0 for n in graph.nodes}
    children: dict[str, list[str]] = {n.id: [] for n in graph.nodes}
    for u, v in graph.edges:
        if u in children and v in indeg:
            children[u].append(v)
            indeg[v] += 1
    ready = [nid for nid, d in indeg.items() if d == 0]
    seen = 0
    while ready:
        nid = ready.pop()
        seen += 1
        for child in children[nid]:
            indeg[child] -= 1
            if indeg[child] == 0:
                ready.append(child)
    return seen != len(indeg)


def validate(graph: BowtieGraph) -> ValidationReport:
    """Check every structural invariant; empty report iff the graph is sound."""
    violations: list[Violation] = []
    note = lambda code, subject, message: violations.append(
        Violation(code, subject, message)
    )

    ids = [n.id for n in graph.nodes]
    id_set = set(ids)
    for nid in sorted({i for i in ids if ids.count(i) > 1}):
        note("DUPLICATE_ID", nid, "duplicate node id")
    for nid in ids:
        if not ID_PATTERN.match(nid):
            note("ID_FORMAT", nid, "node ids must match [a-z0-9-]+")

    for u, v in graph.edges:
        if u not in id_set or v not in id_set:
            note("EDGE_REF", f"{u}->{v}", "edge references a missing node")
        if u == v:
            note("SELF_LOOP", u, "self loops are not allowed")
    if len(set(graph.edges)) != len(graph.edges):
        note("DUPLICATE_EDGE", graph.id, "duplicate edges are not allowed")

    tops = [n for n in graph.nodes if n.kind is NodeKind.TOP_EVENT]
    if len(tops) != 1:
        note("TOP_EVENT_COUNT", graph.id, f"expected exactly 1 top event, found {len(tops)}")
    if not graph.has_node(graph.top_event_id):
        note("TOP_EVENT_REF", graph.top_event_id, "topEventId references a missing node")
    elif tops and graph.node(graph.top_event_id).kind is not NodeKind.TOP_EVENT:
        note("TOP_EVENT_REF", graph.top_event_id, "topEventId must name the top event node")

    if _find_cycle(graph):
        note("CYCLE_DETECTED", graph.id, "graph contains a cycle")

    # kind-specific fields and parameter ranges
    for n in graph.nodes:
        if (n.gate_type is not None) != (n.kind is NodeKind.GATE):
            note("KIND_FIELDS", n.id, "gateType must be set on gates and only gates")
        if n.kind is not NodeKind.BARRIER:
            if n.barrier_class or n.barrier_side or n.activation or n.lam is not None:
                note("KIND_FIELDS", n.id, "barrier fields are only legal on barriers")
        if n.theta is not None and n.kind is not NodeKind.THREAT:
            note("KIND_FIELDS", n.id, "theta is only legal on threat nodes")
        if n.lam is not None and not 0.0 <= n.lam <= 1.0:
            note("PARAM_RANGE", n.id, f"lambda {n.lam} outside [0,1]")
        if n.theta is not None and not 0.0 <= n.theta <= 1.0:
            note("PARAM_RANGE", n.id, f"theta {n.theta} outside [0,1]")

    if not violations:  # structural checks below assume a well-formed base
        top_id = graph.top_event_id
        left = left_side(graph)
        right = right_side(graph)
        node_map = graph.node_map

        if not any(n.kind is NodeKind.THREAT for n in graph.nodes):
            note("NO_THREAT", graph.id, "a bowtie requires at least one threat")
        if not any(
            n.kind is NodeKind.CONSEQUENCE and not graph.children(n.id)
            for n in graph.nodes
        ):
            note("NO_CONSEQUENCE", graph.id, "a bowtie requires a terminal consequence")

        for n in graph.nodes:
            if n.id == top_id:
                continue
            if n.id not in left and n.id not in right:
                note("ORPHAN", n.id, "node is not connected to the top event")

        for n in graph.nodes:
            indeg = len(graph.parents(n.id))
            outdeg = len(graph.children(n.id))
            if n.kind is NodeKind.THREAT:
                if n.id in right:
                    note("SIDE_SEPARATION", n.id, "threats belong on the cause side")
                if indeg != 0:
                    note("THREAT_SOURCE", n.id, "threats must have no incoming edges")
            elif n.kind is NodeKind.GATE:
                if n.id in right:
                    note("SIDE_SEPARATION", n.id, "gates belong on the cause side")
                if indeg < 2:
                    note("GATE_ARITY", n.id, f"gate has {indeg} parents, needs >=2")
                if outdeg != 1:
                    note("GATE_FANOUT", n.id, f"gate feeds {outdeg} nodes, needs exactly 1")
            elif n.kind is NodeKind.BARRIER:
                if indeg != 1 or outdeg != 1:
                    note(
                        "BARRIER_PLACEMENT", n.id,
                        "barriers must split exactly one edge (1 in, 1 out)",
                    )
                if n.barrier_side is BarrierSide.FT and n.id in right:
                    note("SIDE_SEPARATION", n.id, "FT barrier placed on the consequence side")
                if n.barrier_side is BarrierSide.ET and n.id in left:
                    note("SIDE_SEPARATION", n.id, "ET barrier placed on the cause side")
            elif n.kind in (NodeKind.FORK, NodeKind.CONSEQUENCE):
                if n.id in left:
                    note("SIDE_SEPARATION", n.id, f"{n.kind.value} belongs on the consequence side")
                if n.kind is NodeKind.FORK and outdeg < 2:
                    note("FORK_ARITY", n.id, f"fork has {outdeg} branches, needs >=2")

        # right side is a tree: unique parent, branching only at forks
        for nid in sorted(right):
            if len(graph.parents(nid)) != 1:
                note("RIGHT_TREE", nid, "consequence-side nodes must have exactly one parent")
        for nid in sorted(right | {top_id}):
            n = node_map[nid]
            right_children = [c for c in graph.children(nid) if c in right]
            if n.kind is not NodeKind.FORK and len(right_children) > 1:
                note(
                    "RIGHT_BRANCHING", nid,
                    "only fork nodes may branch on the consequence side",
                )
        for nid in sorted(right):
            n = node_map[nid]
            if not graph.children(nid) and n.kind not in (NodeKind.CONSEQUENCE,):
                note("LEAF_KIND", nid, "consequence-side leaves must be consequence nodes")

    return ValidationReport(tuple(violations))
