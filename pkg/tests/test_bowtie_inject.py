import pytest

from riskpipe import demo
from riskpipe.bowtie import (
    BowtieGraph,
    BowtieNode,
    GateType,
    NodeKind,
    inject_context_factors,
    validate,
)
from riskpipe.errors import EngineError
from riskpipe.heatmap import RiskObject


def _base_bowtie():
    return BowtieGraph("gw", (
        BowtieNode("faulty-change", NodeKind.THREAT, name="faulty change"),
        BowtieNode("top", NodeKind.TOP_EVENT, name="outage"),
        BowtieNode("impact", NodeKind.CONSEQUENCE, name="impact"),
    ), (("faulty-change", "top"), ("top", "impact")), "top")


def _paths_preserved(before: BowtieGraph, after: BowtieGraph) -> bool:
    """Every pre-existing edge survives, possibly rerouted through new nodes."""
    new_ids = {n.id for n in after.nodes} - {n.id for n in before.nodes}
    for u, v in before.edges:
        stack, seen, found = [u], set(), False
        while stack:
            current = stack.pop()
            for child in after.children(current):
                if child == v:
                    found = True
                    break
                if child in new_ids and child not in seen:
                    seen.add(child)
                    stack.append(child)
            if found:
                break
        if not found:
            return False
    return True


class TestInject:
    def test_no_context_dims_is_noop(self):
        risk = RiskObject(
            "bare", "bare", 1.0, 0.0,
            demo.likelihood_scale(), demo.impact_scale(),
        )
        graph = _base_bowtie()
        assert inject_context_factors(graph, risk) == graph

    def test_use_case_adds_three_threats_and_one_chain(self, gateway_risk_3dim):
        graph = _base_bowtie()
        injected = inject_context_factors(graph, gateway_risk_3dim)
        threats = [
            n for n in injected.nodes
            if n.kind is NodeKind.THREAT and n.context_origin is not None
        ]
        chains = [
            n for n in injected.nodes
            if n.kind is NodeKind.CONSEQUENCE and n.context_origin is not None
        ]
        assert len(threats) == 3
        assert len(chains) == 1
        assert chains[0].context_origin[0] == "load"
        # all three context threats feed one OR gate
        gates = [n for n in injected.nodes if n.kind is NodeKind.GATE]
        assert len(gates) == 1 and gates[0].gate_type is GateType.OR
        for t in threats:
            assert injected.children(t.id) == [gates[0].id]
        # chain spliced directly after the top event
        assert injected.children("top") == [chains[0].id]
        assert validate(injected).ok

    def test_idempotent(self, gateway_risk_3dim):
        injected = inject_context_factors(_base_bowtie(), gateway_risk_3dim)
        again = inject_context_factors(injected, gateway_risk_3dim)
        assert again == injected

    def test_preserves_existing_ids_and_paths(self, gateway_risk_3dim):
        graph = _base_bowtie()
        injected = inject_context_factors(graph, gateway_risk_3dim)
        assert {n.id for n in graph.nodes} <= {n.id for n in injected.nodes}
        assert _paths_preserved(graph, injected)

    def test_and_only_cause_structure_gets_or_above(self, gateway_risk_3dim):
        graph = BowtieGraph("gw", (
            BowtieNode("t1", NodeKind.THREAT),
            BowtieNode("t2", NodeKind.THREAT),
            BowtieNode("all", NodeKind.GATE, gate_type=GateType.AND),
            BowtieNode("top", NodeKind.TOP_EVENT),
            BowtieNode("impact", NodeKind.CONSEQUENCE),
        ), (
            ("t1", "all"), ("t2", "all"), ("all", "top"), ("top", "impact"),
        ), "top")
        injected = inject_context_factors(graph, gateway_risk_3dim)
        assert validate(injected).ok
        or_gates = [
            n for n in injected.nodes
            if n.kind is NodeKind.GATE and n.gate_type is GateType.OR
        ]
        assert len(or_gates) == 1
        # the AND gate now feeds the OR gate instead of the top event
        assert injected.children("all") == [or_gates[0].id]

    def test_reuses_existing_context_threats_and_gate(self, gateway_risk_3dim, gateway_bowtie):
        injected = inject_context_factors(gateway_bowtie, gateway_risk_3dim)
        # the demo bowtie already carries the three context threats: the X
        # side is untouched, only the load impact chain is new
        assert [n for n in injected.nodes if n.kind is NodeKind.THREAT] == [
            n for n in gateway_bowtie.nodes if n.kind is NodeKind.THREAT
        ]
        gates = [n for n in injected.nodes if n.kind is NodeKind.GATE]
        assert len(gates) == 1 and gates[0].id == "causes-or"
        added = {n.id for n in injected.nodes} - {n.id for n in gateway_bowtie.nodes}
        assert added == {"impact-load"}
        assert injected.children("outage") == ["impact-load"]
        assert inject_context_factors(injected, gateway_risk_3dim) == injected

    def test_invalid_bowtie_rejected(self, gateway_risk_3dim):
        broken = _base_bowtie().with_edges(("impact", "faulty-change"))
        with pytest.raises(EngineError):
            inject_context_factors(broken, gateway_risk_3dim)
