"""Acceptance criteria, one test per criterion at its stated tolerance.

Run `pytest tests/test_acceptance.py -v` for one pass/fail line per
criterion; a summary block is also printed at the end of the session.
"""

import itertools
import json
import random
import time
from pathlib import Path

import pytest

from riskpipe import demo
from riskpipe.bayes import (
    Evidence,
    Intervention,
    NoisyOrParams,
    apply_barrier_damping,
    cpt_noisy_or,
    do_intervene,
    enumerate_joint,
    infer,
    insert_parent,
    whatif,
)
from riskpipe.bowtie import parse_xml, write_xml
from riskpipe.heatmap import (
    ContextContribution,
    ContextDimension,
    ContextState,
    DimensionKind,
    ImpactMode,
    RiskObject,
    adjust_impact,
    adjust_likelihood,
    bin_metric,
    compute_slice,
    default_policy,
    dump_risk,
)
from riskpipe.service.store import ModelStore, load as load_store, persist
from riskpipe.transform import load_result, normalize, result_to_bytes, to_dag

from randmodels import (
    confounded_barrier_model,
    random_bowtie,
    random_cpt,
    random_dag,
    random_evidence,
)

DATA = Path(__file__).parent / "data"


def _budget(started: float, seconds: float):
    assert time.monotonic() - started < seconds, f"exceeded {seconds}s runtime budget"


def test_c1_table_contributions_reproduction():
    """Four context contributions sum to +1.8 / 900 exactly; 900 bins Major."""
    started = time.monotonic()
    risk = demo.gateway_risk()
    peak = demo.peak_state(risk)

    assert adjust_likelihood(0.0, risk.contributions, peak) == 1.8
    assert adjust_impact(0.0, risk.contributions, peak, risk.y_scale) == 900.0
    # per-row loss-rate derivations are stored exactly
    assert [c.delta_y_metric for c in risk.contributions] == [360.0, 180.0, 330.0, 30.0]
    assert bin_metric(900, risk.y_scale).name == "Major"
    _budget(started, 1.0)


def test_c2_slice_escalation_from_unlikely_moderate():
    """Unlikely/Moderate base under the +2/+2 peak configuration escalates to
    at least (Likely, Major) and grades non-acceptable."""
    started = time.monotonic()
    risk = RiskObject(
        id="gateway-escalation",
        title="escalation variant",
        x_base=1.0,    # Unlikely
        y_base=56.0,   # midpoint of Moderate (11..100 lost transactions)
        x_scale=demo.likelihood_scale(),
        y_scale=demo.impact_scale(),
        context_dims=(ContextDimension("load", demo.load_scale(), DimensionKind.BOTH),),
        contributions=(ContextContribution(
            "load", "Peak", delta_x=2.0,
            impact_mode=ImpactMode.LEVEL_SHIFT, delta_y_levels=2.0,
        ),),
    )
    policy = default_policy()
    nd = compute_slice(risk, ContextState.of({"load": "Peak"}), policy)

    likely = risk.x_scale.level_by_name("Likely").index
    major = risk.y_scale.level_by_name("Major").index
    assert nd.x_level.index >= likely
    assert nd.y_level.index >= major
    assert nd.grade.name == "non-acceptable"
    _budget(started, 1.0)


def test_c3_transform_determinism_and_structure_preservation():
    """Two transforms are byte-identical; the trace covers every Bowtie node;
    the activation set is exactly {ft-1, ft-2, et-1}."""
    started = time.monotonic()
    bowtie = demo.gateway_bowtie()
    first = to_dag(bowtie)
    second = to_dag(demo.gateway_bowtie())

    assert result_to_bytes(first) == result_to_bytes(second)
    assert first.trace.bowtie_ids() == {n.id for n in bowtie.nodes}
    assert {n.id for n in first.dag.activation_nodes()} == {"ft-1", "ft-2", "et-1"}
    _budget(started, 1.0)


def test_c4_safe_state_law_on_randomized_bowties():
    """On 50 random Bowties: P(outcome=safe | topEvent=false) = 1 +/- 1e-9 and
    the outcome distribution normalizes."""
    started = time.monotonic()
    rng = random.Random(1001)
    for i in range(50):
        graph = random_bowtie(rng)
        result = to_dag(normalize(graph))
        outcome_id = f"{graph.top_event_id}.safe"
        post = infer(result.dag, Evidence.of({graph.top_event_id: "false"}))
        dist = post.distribution(outcome_id)
        assert abs(dist["safe"] - 1.0) <= 1e-9, f"graph {i}: {dist}"
        assert abs(sum(dist.values()) - 1.0) <= 1e-9
        unconditioned = infer(result.dag, Evidence.of({}))
        assert abs(sum(unconditioned.distribution(outcome_id).values()) - 1.0) <= 1e-9
    _budget(started, 30.0)


def test_c5_inference_matches_joint_oracle():
    """On 100 random DAGs (state space <= 2^15): every marginal from infer
    matches the brute-force joint within 1e-9, with and without evidence."""
    started = time.monotonic()
    rng = random.Random(2002)
    for i in range(100):
        model = random_dag(rng, max_nodes=15, max_states=3, state_space_cap=2 ** 15)
        joint = enumerate_joint(model)
        for evidence in ({}, random_evidence(rng, model)):
            post = infer(model, Evidence.of(evidence))
            for node in model.nodes:
                oracle = joint.marginal(node.id, evidence or None)
                dist = post.distribution(node.id)
                for state, expected in oracle.items():
                    assert abs(dist[state] - expected) <= 1e-9, (
                        f"model {i}, node {node.id}, state {state}, "
                        f"evidence {evidence}"
                    )
    _budget(started, 60.0)


def test_c6_noisy_or_formula_and_damping_law():
    """Noisy-OR matches its formula on exhaustive configurations up to 10
    parents (exact); damping holds pointwise on 1000 random (CPT, lambda)
    pairs within 1e-12."""
    started = time.monotonic()
    rng = random.Random(3003)
    for n in range(1, 11):
        order = [f"p{i}" for i in range(n)]
        thetas = {pid: rng.random() for pid in order}
        leak = rng.random() * 0.3
        cpt = cpt_noisy_or(NoisyOrParams.of(thetas, leak), order)
        for cfg in itertools.product((0, 1), repeat=n):
            miss = 1.0 - leak
            for pid, active in zip(order, cfg):
                if active:
                    miss *= 1.0 - thetas[pid]
            assert cpt.column(cfg)[1] == 1.0 - miss
            assert cpt.column(cfg)[0] == miss

    for _ in range(1000):
        k = rng.randint(0, 3)
        cards = tuple(rng.choice((2, 3)) for _ in range(k))
        base = random_cpt(rng, 2, cards)
        position = rng.randint(0, k)
        lam = rng.random()
        damped = apply_barrier_damping(
            insert_parent(base, position, 2), position, lam
        )
        damped.check_normalized(1e-12)
        for cfg in damped.configs():
            if cfg[position] == 0:
                fails = cfg[:position] + (1,) + cfg[position + 1:]
                assert abs(
                    damped.column(cfg)[1] - lam * damped.column(fails)[1]
                ) <= 1e-12
    _budget(started, 10.0)


def test_c7_whatif_monotonicity_on_use_case():
    """do(ft-2=works) never raises the outage probability; do(et-1=works)
    never raises the lost-transactions posterior; both agree with the
    enumeration oracle."""
    started = time.monotonic()
    dag = to_dag(demo.gateway_bowtie()).dag
    empty = Evidence.of({})

    p_works = whatif(dag, empty, Intervention.of({"ft-2": "works"}))
    p_fails = whatif(dag, empty, Intervention.of({"ft-2": "fails"}))
    assert p_works.probability("outage", "true") <= p_fails.probability(
        "outage", "true"
    ) + 1e-12

    lost_works = whatif(dag, empty, Intervention.of({"et-1": "works"}))
    lost_fails = whatif(dag, empty, Intervention.of({"et-1": "fails"}))
    assert lost_works.probability(
        "outage.safe", "lost-transactions"
    ) <= lost_fails.probability("outage.safe", "lost-transactions") + 1e-12

    # same inequalities through the independent joint oracle
    for target, state, iv in (
        ("outage", "true", "ft-2"),
        ("outage.safe", "lost-transactions", "et-1"),
    ):
        works_joint = enumerate_joint(
            do_intervene(dag, Intervention.of({iv: "works"}))
        ).marginal(target)[state]
        fails_joint = enumerate_joint(
            do_intervene(dag, Intervention.of({iv: "fails"}))
        ).marginal(target)[state]
        assert works_joint <= fails_joint + 1e-12
        via_infer = whatif(dag, empty, Intervention.of({iv: "works"}))
        assert abs(via_infer.probability(target, state) - works_joint) <= 1e-9
    _budget(started, 5.0)


def test_c8_round_trip_fidelity():
    """XML and store persistence are lossless on the golden files and on 50
    generated graphs."""
    started = time.monotonic()
    golden_xml = (DATA / "usecase_bowtie.xml").read_bytes()
    graph = parse_xml(golden_xml)
    assert write_xml(graph) == golden_xml
    assert graph == demo.gateway_bowtie()

    golden_dag = (DATA / "usecase_dag.json").read_bytes()
    assert result_to_bytes(load_result(golden_dag)) == golden_dag

    rng = random.Random(4004)
    for _ in range(50):
        generated = random_bowtie(rng)
        assert parse_xml(write_xml(generated)) == generated

    store = ModelStore()
    store.put("risks", "gateway", dump_risk(demo.gateway_risk()), None)
    store.put("bowties", "gateway", golden_xml, None)
    store.put("dags", "gateway-deterministic", golden_dag, None)
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        persist(store, tmp)
        loaded = load_store(tmp)
        assert loaded.snapshot() == store.snapshot()
        for kind, entity_id in (
            ("risks", "gateway"),
            ("bowties", "gateway"),
            ("dags", "gateway-deterministic"),
        ):
            assert loaded.get(kind, entity_id).data == store.get(kind, entity_id).data
    _budget(started, 10.0)


def test_c9_observation_differs_from_intervention():
    """The fixed confounded model separates seeing from doing by more than
    0.01 in at least one posterior."""
    started = time.monotonic()
    model = confounded_barrier_model()
    observed = infer(model, Evidence.of({"b": "works"}))
    forced = whatif(model, Evidence.of({}), Intervention.of({"b": "works"}))
    deltas = [
        abs(observed.probability(n.id, s) - forced.probability(n.id, s))
        for n in model.nodes for s in n.states
    ]
    assert max(deltas) > 0.01
    _budget(started, 1.0)
