import random

import networkx as nx
import pytest

from riskpipe.bowtie import (
    BarrierClass,
    BarrierSide,
    BowtieGraph,
    BowtieNode,
    GateType,
    NodeKind,
    insert_barrier,
    left_side,
    right_side,
    validate,
)
from riskpipe.errors import EngineError

from randmodels import random_bowtie


def _minimal():
    return BowtieGraph("b", (
        BowtieNode("t", NodeKind.THREAT, name="threat"),
        BowtieNode("top", NodeKind.TOP_EVENT, name="top"),
        BowtieNode("c", NodeKind.CONSEQUENCE, name="consequence"),
    ), (("t", "top"), ("top", "c")), "top")


class TestValidate:
    def test_use_case_bowtie_clean(self, gateway_bowtie):
        assert validate(gateway_bowtie).ok

    def test_minimal_chain_clean(self):
        assert validate(_minimal()).ok

    def test_two_top_events(self):
        g = _minimal().with_nodes(BowtieNode("top2", NodeKind.TOP_EVENT))
        report = validate(g)
        assert "TOP_EVENT_COUNT" in report.codes()

    def test_lambda_out_of_range(self, gateway_bowtie):
        bad = BowtieGraph(
            id=gateway_bowtie.id,
            nodes=tuple(
                n if n.id != "ft-2" else BowtieNode(
                    "ft-2", NodeKind.BARRIER, name=n.name,
                    barrier_class=n.barrier_class, barrier_side=n.barrier_side,
                    activation=n.activation, lam=1.5,
                )
                for n in gateway_bowtie.nodes
            ),
            edges=gateway_bowtie.edges,
            top_event_id=gateway_bowtie.top_event_id,
        )
        assert "PARAM_RANGE" in validate(bad).codes()

    def test_cycle_detected(self):
        g = _minimal().with_edges(("c", "t"))
        assert "CYCLE_DETECTED" in validate(g).codes()

    def test_barrier_needs_one_in_one_out(self):
        g = _minimal().with_nodes(BowtieNode(
            "b1", NodeKind.BARRIER, barrier_side=BarrierSide.FT, lam=0.5,
        )).with_edges(("b1", "top"))
        assert "BARRIER_PLACEMENT" in validate(g).codes()

    def test_gate_arity(self):
        g = BowtieGraph("b", (
            BowtieNode("t", NodeKind.THREAT),
            BowtieNode("g1", NodeKind.GATE, gate_type=GateType.OR),
            BowtieNode("top", NodeKind.TOP_EVENT),
            BowtieNode("c", NodeKind.CONSEQUENCE),
        ), (("t", "g1"), ("g1", "top"), ("top", "c")), "top")
        assert "GATE_ARITY" in validate(g).codes()

    def test_orphan_node(self):
        g = _minimal().with_nodes(BowtieNode("island", NodeKind.THREAT))
        assert "ORPHAN" in validate(g).codes()

    def test_consequence_on_left_flagged(self):
        g = BowtieGraph("b", (
            BowtieNode("t", NodeKind.THREAT),
            BowtieNode("x", NodeKind.CONSEQUENCE),
            BowtieNode("top", NodeKind.TOP_EVENT),
            BowtieNode("c", NodeKind.CONSEQUENCE),
        ), (("t", "x"), ("x", "top"), ("top", "c")), "top")
        assert "SIDE_SEPARATION" in validate(g).codes()

    def test_right_branching_without_fork(self):
        g = _minimal().with_nodes(
            BowtieNode("c2", NodeKind.CONSEQUENCE)
        ).with_edges(("top", "c2"))
        assert "RIGHT_BRANCHING" in validate(g).codes()

    def test_id_format(self):
        g = BowtieGraph("b", (
            BowtieNode("T_1", NodeKind.THREAT),
            BowtieNode("top", NodeKind.TOP_EVENT),
            BowtieNode("c", NodeKind.CONSEQUENCE),
        ), (("T_1", "top"), ("top", "c")), "top")
        assert "ID_FORMAT" in validate(g).codes()

    def test_theta_only_on_threats(self):
        g = BowtieGraph("b", (
            BowtieNode("t", NodeKind.THREAT),
            BowtieNode("top", NodeKind.TOP_EVENT),
            BowtieNode("c", NodeKind.CONSEQUENCE, theta=0.5),
        ), (("t", "top"), ("top", "c")), "top")
        assert "KIND_FIELDS" in validate(g).codes()


class TestValidationSoundness:
    def test_clean_reports_imply_invariants(self):
        # independent oracle: networkx checks on every clean random graph
        rng = random.Random(4242)
        for _ in range(25):
            graph = random_bowtie(rng)
            assert validate(graph).ok
            g = nx.DiGraph()
            g.add_nodes_from(n.id for n in graph.nodes)
            g.add_edges_from(graph.edges)
            assert nx.is_directed_acyclic_graph(g)
            tops = [n for n in graph.nodes if n.kind is NodeKind.TOP_EVENT]
            assert len(tops) == 1
            left, right = left_side(graph), right_side(graph)
            assert not left & right
            for nid in right:
                assert g.in_degree(nid) == 1
            for n in graph.nodes:
                if n.kind is NodeKind.BARRIER:
                    assert g.in_degree(n.id) == 1 and g.out_degree(n.id) == 1
                if n.kind is NodeKind.GATE:
                    assert g.in_degree(n.id) >= 2


class TestCanonicalForm:
    def test_node_order_never_matters(self, gateway_bowtie):
        shuffled = BowtieGraph(
            id=gateway_bowtie.id,
            nodes=tuple(reversed(gateway_bowtie.nodes)),
            edges=tuple(reversed(gateway_bowtie.edges)),
            top_event_id=gateway_bowtie.top_event_id,
        )
        assert shuffled == gateway_bowtie

    def test_insert_barrier_splits_edge(self):
        g = _minimal()
        barrier = BowtieNode(
            "b1", NodeKind.BARRIER, name="guard",
            barrier_class=BarrierClass.MITIGATIVE, barrier_side=BarrierSide.ET,
            lam=0.5,
        )
        g2 = insert_barrier(g, barrier, ("top", "c"))
        assert ("top", "b1") in g2.edges and ("b1", "c") in g2.edges
        assert ("top", "c") not in g2.edges
        assert validate(g2).ok

    def test_insert_barrier_requires_existing_edge(self):
        with pytest.raises(EngineError):
            insert_barrier(
                _minimal(),
                BowtieNode("b1", NodeKind.BARRIER, barrier_side=BarrierSide.ET),
                ("t", "c"),
            )
