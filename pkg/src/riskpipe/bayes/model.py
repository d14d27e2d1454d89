"""Bayesian network model: nodes with states, parents, CPTs, activation flags.

Models are immutable values. Root nodes carry their marginal distribution
as a zero-parent CPT (exposed via `prior`).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import EngineError, validation_error
from .cpt import BARRIER_STATES, Cpt, NORMALIZATION_TOL


@dataclass(frozen=True)
class BayesNode:
    id: str
    states: tuple[str, ...]
    parents: tuple[str, ...]
    cpt: Cpt
    activation: bool = False

    def __post_init__(self):
        if len(self.states) < 2:
            raise validation_error(f"node {self.id!r} requires >=2 states")
        if len(set(self.states)) != len(self.states):
            raise validation_error(f"node {self.id!r} has duplicate state names")
        if self.activation and self.states != BARRIER_STATES:
            raise validation_error(
                f"activation node {self.id!r} must have states {BARRIER_STATES}"
            )

    @property
    def prior(self) -> tuple[float, ...] | None:
        if self.parents:
            return None
        return tuple(row[0] for row in self.cpt.values)

    def state_index(self, state: str) -> int:
        try:
            return self.states.index(state)
        except ValueError:
            raise validation_error(
                f"node {self.id!r} has no state {state!r}"
            ) from None


@dataclass(frozen=True)
class DagModel:
    id: str
    nodes: tuple[BayesNode, ...]

    def __post_init__(self):
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise validation_error(f"model {self.id!r} has duplicate node ids")

    def node(self, node_id: str) -> BayesNode:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise EngineError("NOT_FOUND", f"model {self.id!r} has no node {node_id!r}")

    def has_node(self, node_id: str) -> bool:
        return any(n.id == node_id for n in self.nodes)

    @property
    def node_map(self) -> dict[str, BayesNode]:
        return {n.id: n for n in self.nodes}

    def roots(self) -> tuple[BayesNode, ...]:
        return tuple(n for n in self.nodes if not n.parents)

    def activation_nodes(self) -> tuple[BayesNode, ...]:
        return tuple(n for n in self.nodes if n.activation)

    def edges(self) -> tuple[tuple[str, str], ...]:
        return tuple(
            sorted((p, n.id) for n in self.nodes for p in n.parents)
        )

    def topological_ids(self) -> list[str]:
        """Topological order with lexicographic id tie-break; cycle -> error."""
        import heapq

        nodes = self.node_map
        children: dict[str, list[str]] = {nid: [] for nid in nodes}
        indeg: dict[str, int] = {nid: 0 for nid in nodes}
        for n in self.nodes:
            for p in n.parents:
                if p not in nodes:
                    raise validation_error(
                        f"node {n.id!r} references unknown parent {p!r}"
                    )
                children[p].append(n.id)
                indeg[n.id] += 1
        ready = [nid for nid, d in indeg.items() if d == 0]
        heapq.heapify(ready)
        order: list[str] = []
        while ready:
            nid = heapq.heappop(ready)
            order.append(nid)
            for child in children[nid]:
                indeg[child] -= 1
                if indeg[child] == 0:
                    heapq.heappush(ready, child)
        if len(order) != len(nodes):
            raise EngineError("CYCLE_DETECTED", f"model {self.id!r} contains a cycle")
        return order

    def validate(self) -> None:
        """Raise for cycles, dangling parents, or malformed/unnormalized CPTs."""
        nodes = self.node_map
        self.topological_ids()
        for n in self.nodes:
            expected_cards = tuple(len(nodes[p].states) for p in n.parents)
            if n.cpt.parent_cards != expected_cards:
                raise validation_error(
                    f"node {n.id!r} cpt parent cards {n.cpt.parent_cards} "
                    f"!= parent state counts {expected_cards}"
                )
            if n.cpt.n_states != len(n.states):
                raise validation_error(
                    f"node {n.id!r} cpt has {n.cpt.n_states} rows for "
                    f"{len(n.states)} states"
                )
            n.cpt.check_normalized(NORMALIZATION_TOL)

    def replace_node(self, node: BayesNode) -> "DagModel":
        return DagModel(
            id=self.id,
            nodes=tuple(node if n.id == node.id else n for n in self.nodes),
        )


@dataclass(frozen=True)
class Evidence:
    assignments: tuple[tuple[str, str], ...] = ()  # (node id, observed state)

    @staticmethod
    def of(mapping: dict[str, str]) -> "Evidence":
        return Evidence(tuple(mapping.items()))

    def as_dict(self) -> dict[str, str]:
        return dict(self.assignments)

    def check_against(self, model: DagModel) -> None:
        for node_id, state in self.assignments:
            model.node(node_id).state_index(state)


@dataclass(frozen=True)
class Intervention:
    assignments: tuple[tuple[str, str], ...] = ()  # (node id, forced state)
    require_activation: bool = True

    @staticmethod
    def of(mapping: dict[str, str], require_activation: bool = True) -> "Intervention":
        return Intervention(tuple(mapping.items()), require_activation)

    def as_dict(self) -> dict[str, str]:
        return dict(self.assignments)


@dataclass(frozen=True)
class Posterior:
    per_node: tuple[tuple[str, tuple[tuple[str, float], ...]], ...]

    @staticmethod
    def of(dists: dict[str, dict[str, float]]) -> "Posterior":
        return Posterior(tuple(
            (nid, tuple(dist.items())) for nid, dist in dists.items()
        ))

    def distribution(self, node_id: str) -> dict[str, float]:
        for nid, dist in self.per_node:
            if nid == node_id:
                return dict(dist)
        raise EngineError("NOT_FOUND", f"posterior has no node {node_id!r}")

    def probability(self, node_id: str, state: str) -> float:
        dist = self.distribution(node_id)
        if state not in dist:
            raise validation_error(f"node {node_id!r} has no state {state!r}")
        return dist[state]

    def to_json(self) -> dict:
        return {nid: dict(dist) for nid, dist in self.per_node}
