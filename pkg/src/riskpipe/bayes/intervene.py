"""Do-style interventions by graph surgery.

Forcing a node severs its incoming edges and replaces its distribution
with a point mass, which is what distinguishes acting on a barrier from
merely observing its state. By default only activation-flagged nodes may
be forced.
"""

from __future__ import annotations

from ..errors import EngineError
from .cpt import point_mass
from .inference import infer
from .model import BayesNode, DagModel, Evidence, Intervention, Posterior


def do_intervene(dag: DagModel, intervention: Intervention) -> DagModel:
    """Return a new model with every target forced to its assigned state."""
    result = dag
    for node_id, state in intervention.assignments:
        node = result.node(node_id)
        if intervention.require_activation and not node.activation:
            raise EngineError(
                "NOT_INTERVENABLE",
                f"node {node_id!r} is not an activation node; "
                "pass require_activation=False to override",
            )
        idx = node.state_index(state)
        result = result.replace_node(BayesNode(
            id=node.id,
            states=node.states,
            parents=(),
            cpt=point_mass(len(node.states), idx),
            activation=node.activation,
        ))
    return result


def whatif(dag: DagModel, evidence: Evidence, intervention: Intervention) -> Posterior:
    """Posteriors after applying the intervention and conditioning on evidence.

    Evidence on an intervened node is contradictory unless it names the
    forced state.
    """
    forced = intervention.as_dict()
    for node_id, state in evidence.assignments:
        if node_id in forced and forced[node_id] != state:
            raise EngineError(
                "CONTRADICTORY_EVIDENCE",
                f"evidence sets {node_id!r}={state!r} but the intervention "
                f"forces {forced[node_id]!r}",
            )
    return infer(do_intervene(dag, intervention), evidence)
