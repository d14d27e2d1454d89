"""Exact inference: variable elimination, plus a brute-force joint oracle.

`infer` computes every node's posterior by sum-product elimination with a
fixed (sorted) elimination order, so results are deterministic. The joint
oracle `enumerate_joint` multiplies the factored model out into the full
joint tensor and is kept independent of the elimination path: tests compare
the two against each other.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass

import numpy as np

from ..errors import EngineError, validation_error
from .model import DagModel, Evidence, Posterior

JOINT_STATE_SPACE_GUARD = 2 ** 22


@dataclass(frozen=True)
class _Factor:
    vars: tuple[str, ...]
    array: np.ndarray


def _cpt_array(node, cards: dict[str, int]) -> np.ndarray:
    shape = tuple(cards[p] for p in node.parents) + (len(node.states),)
    return np.asarray(node.cpt.values, dtype=float).T.reshape(shape)


def _product(a: _Factor, b: _Factor) -> _Factor:
    names = list(dict.fromkeys(a.vars + b.vars))
    letters = {v: string.ascii_letters[i] for i, v in enumerate(names)}
    sub_a = "".join(letters[v] for v in a.vars)
    sub_b = "".join(letters[v] for v in b.vars)
    sub_out = "".join(letters[v] for v in names)
    out = np.einsum(f"{sub_a},{sub_b}->{sub_out}", a.array, b.array)
    return _Factor(tuple(names), out)


def _eliminate(factors: list[_Factor], var: str) -> list[_Factor]:
    related = [f for f in factors if var in f.vars]
    rest = [f for f in factors if var not in f.vars]
    if not related:
        return rest
    merged = related[0]
    for f in related[1:]:
        merged = _product(merged, f)
    axis = merged.vars.index(var)
    summed = merged.array.sum(axis=axis)
    remaining = tuple(v for v in merged.vars if v != var)
    rest.append(_Factor(remaining, summed))
    return rest


def _reduced_factors(dag: DagModel, observed: dict[str, int]) -> list[_Factor]:
    cards = {n.id: len(n.states) for n in dag.nodes}
    factors = []
    for node in dag.nodes:
        f = _Factor(tuple(node.parents) + (node.id,), _cpt_array(node, cards))
        for var, idx in observed.items():
            if var in f.vars:
                axis = f.vars.index(var)
                f = _Factor(
                    tuple(v for v in f.vars if v != var),
                    np.take(f.array, idx, axis=axis),
                )
        factors.append(f)
    return factors


def _marginal(factors: list[_Factor], keep: str | None, order: list[str]) -> np.ndarray:
    work = list(factors)
    for var in order:
        if var == keep:
            continue
        work = _eliminate(work, var)
    result = _Factor((), np.asarray(1.0))
    for f in work:
        result = _product(result, f)
    return result.array


def infer(dag: DagModel, evidence: Evidence) -> Posterior:
    """Exact marginal posteriors for every node given the evidence."""
    dag.validate()
    evidence.check_against(dag)
    observed = {
        nid: dag.node(nid).state_index(state)
        for nid, state in evidence.assignments
    }
    factors = _reduced_factors(dag, observed)
    order = sorted(n.id for n in dag.nodes if n.id not in observed)

    z = float(_marginal(factors, None, order))
    if z <= 0.0:
        raise EngineError(
            "EVIDENCE_IMPOSSIBLE", "evidence has probability zero under the model"
        )

    dists: dict[str, dict[str, float]] = {}
    for node in dag.nodes:
        if node.id in observed:
            idx = observed[node.id]
            dists[node.id] = {
                s: (1.0 if i == idx else 0.0) for i, s in enumerate(node.states)
            }
            continue
        vec = _marginal(factors, node.id, order)
        total = float(vec.sum())
        if total <= 0.0:
            raise EngineError(
                "EVIDENCE_IMPOSSIBLE", "evidence has probability zero under the model"
            )
        dists[node.id] = {
            s: float(vec[i] / total) for i, s in enumerate(node.states)
        }
    return Posterior.of(dists)


@dataclass(frozen=True)
class JointTable:
    """Full joint distribution over all nodes, axes in model node order."""

    node_ids: tuple[str, ...]
    states: tuple[tuple[str, ...], ...]
    array: np.ndarray

    def total(self) -> float:
        return float(self.array.sum())

    def probability(self, assignment: dict[str, str]) -> float:
        if set(assignment) != set(self.node_ids):
            raise validation_error("joint lookup requires a full assignment")
        idx = tuple(
            self.states[i].index(assignment[nid])
            for i, nid in enumerate(self.node_ids)
        )
        return float(self.array[idx])

    def marginal(self, node_id: str, evidence: dict[str, str] | None = None) -> dict[str, float]:
        """Oracle marginal P(node | evidence) by slicing and summing."""
        evidence = evidence or {}
        arr = self.array
        kept: list[int] = []
        for i, nid in enumerate(self.node_ids):
            if nid in evidence and nid != node_id:
                arr = np.take(arr, self.states[i].index(evidence[nid]), axis=len(kept))
            else:
                kept.append(i)
        target_pos = kept.index(self.node_ids.index(node_id))
        other_axes = tuple(a for a in range(arr.ndim) if a != target_pos)
        vec = arr.sum(axis=other_axes) if other_axes else arr
        names = self.states[self.node_ids.index(node_id)]
        if node_id in evidence:  # condition on the node's own observation too
            observed = names.index(evidence[node_id])
            vec = np.array([
                v if i == observed else 0.0 for i, v in enumerate(vec)
            ])
        z = float(vec.sum())
        if z <= 0.0:
            raise EngineError(
                "EVIDENCE_IMPOSSIBLE", "evidence has probability zero under the model"
            )
        return {s: float(vec[i] / z) for i, s in enumerate(names)}


def enumerate_joint(dag: DagModel) -> JointTable:
    """Multiply all CPTs into the full joint tensor (guarded by state-space size)."""
    dag.validate()
    cards = {n.id: len(n.states) for n in dag.nodes}
    size = math.prod(cards.values())
    if size > JOINT_STATE_SPACE_GUARD:
        raise EngineError(
            "STATE_SPACE",
            f"joint enumeration over {size} assignments exceeds the "
            f"{JOINT_STATE_SPACE_GUARD} guard",
        )
    node_ids = tuple(n.id for n in dag.nodes)
    letters = {nid: string.ascii_letters[i] for i, nid in enumerate(node_ids)}
    sub_joint = "".join(letters[nid] for nid in node_ids)
    joint = np.ones(tuple(cards[nid] for nid in node_ids), dtype=float)
    for node in dag.nodes:
        arr = _cpt_array(node, cards)
        sub_f = "".join(letters[p] for p in node.parents) + letters[node.id]
        joint = np.einsum(f"{sub_joint},{sub_f}->{sub_joint}", joint, arr)
    return JointTable(
        node_ids=node_ids,
        states=tuple(n.states for n in dag.nodes),
        array=joint,
    )
