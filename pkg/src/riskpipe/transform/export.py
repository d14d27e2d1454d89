"""Deterministic JSON export of transform results.

Nodes serialize in topological order (lexicographic tie-break) with their
CPTs flattened row-major: child state 0 across every parent configuration
first, configurations enumerated odometer-style over the parents in
order. Two equal models produce byte-identical documents.
"""

from __future__ import annotations

import json

from ..bayes import BayesNode, Cpt, DagModel
from ..errors import validation_error
from .todag import TraceEntry, TransformResult, TransformRule, TransformTrace


def result_to_json(result: TransformResult) -> dict:
    dag = result.dag
    return {
        "id": dag.id,
        "profile": result.profile,
        "nodes": [
            {
                "id": n.id,
                "states": list(n.states),
                "parents": list(n.parents),
                "cpt": n.cpt.flat(),
                "activation": n.activation,
            }
            for n in dag.nodes
        ],
        "edges": [list(edge) for edge in dag.edges()],
        "trace": {
            "entries": [
                {
                    "dagNodeId": e.dag_node_id,
                    "bowtieNodeId": e.bowtie_node_id,
                    "rule": e.rule.value,
                }
                for e in result.trace.entries
            ],
            "synthesized": {
                nid: rule.value for nid, rule in result.trace.synthesized
            },
        },
    }


def result_to_bytes(result: TransformResult) -> bytes:
    return (json.dumps(result_to_json(result), indent=2) + "\n").encode("utf-8")


def result_from_json(doc: dict) -> TransformResult:
    try:
        states_by_id: dict[str, int] = {
            n["id"]: len(n["states"]) for n in doc["nodes"]
        }
        nodes = []
        for n in doc["nodes"]:
            parent_cards = tuple(states_by_id[p] for p in n["parents"])
            nodes.append(BayesNode(
                id=n["id"],
                states=tuple(n["states"]),
                parents=tuple(n["parents"]),
                cpt=Cpt.from_flat(
                    [float(v) for v in n["cpt"]], len(n["states"]), parent_cards
                ),
                activation=bool(n.get("activation", False)),
            ))
        trace_doc = doc.get("trace", {"entries": [], "synthesized": {}})
        trace = TransformTrace(
            entries=tuple(
                TraceEntry(
                    e["dagNodeId"], e["bowtieNodeId"], TransformRule(e["rule"])
                )
                for e in trace_doc["entries"]
            ),
            synthesized=tuple(
                (nid, TransformRule(rule))
                for nid, rule in trace_doc.get("synthesized", {}).items()
            ),
        )
        dag = DagModel(id=doc["id"], nodes=tuple(nodes))
        dag.validate()
        return TransformResult(
            dag=dag, trace=trace, profile=doc.get("profile", "deterministic")
        )
    except KeyError as exc:
        raise validation_error(f"dag document missing field {exc}") from exc


def load_result(data: bytes | str) -> TransformResult:
    return result_from_json(json.loads(data))
