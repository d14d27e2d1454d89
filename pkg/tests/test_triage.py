import pytest
from hypothesis import given, strategies as st

from riskpipe import demo
from riskpipe.errors import EngineError
from riskpipe.triage import (
    TemporalCriticality,
    TriageCriteria,
    TriageDecision,
    evaluate,
    rank,
)


def _criteria(states, criticality=TemporalCriticality.LOW):
    return TriageCriteria(
        non_acceptable_classes=frozenset({"non-acceptable"}),
        context_states=tuple(states),
        temporal_criticality=criticality,
    )


class TestEvaluate:
    def test_peak_state_makes_gateway_material(self, gateway_risk, policy):
        peak = demo.peak_state(gateway_risk)
        decision = evaluate(gateway_risk, _criteria([peak]), policy)
        assert decision.material
        assert decision.triggering_states == (peak,)
        assert peak.key() in decision.rationale
        assert "non-acceptable" in decision.rationale

    def test_acceptable_everywhere_is_not_material(self, gateway_risk, policy):
        calm = demo.off_peak_state(gateway_risk)
        decision = evaluate(
            gateway_risk, _criteria([calm], TemporalCriticality.HIGH), policy
        )
        assert not decision.material
        assert decision.priority == 0.0

    def test_priority_scales_with_criticality(self, gateway_risk, policy):
        peak = demo.peak_state(gateway_risk)
        surge = demo.peak_state(gateway_risk)
        surge = type(peak)(tuple(
            (d, "Surge" if d == "load" else l) for d, l in peak.assignments
        ))
        criteria = _criteria([peak, surge], TemporalCriticality.HIGH)
        decision = evaluate(gateway_risk, criteria, policy)
        assert decision.material
        assert decision.priority == len(decision.triggering_states) * 3.0

    def test_empty_states_rejected(self, gateway_risk, policy):
        with pytest.raises(EngineError):
            evaluate(gateway_risk, _criteria([]), policy)

    def test_unknown_class_rejected(self, gateway_risk, policy):
        criteria = TriageCriteria(
            non_acceptable_classes=frozenset({"no-such-class"}),
            context_states=(demo.peak_state(gateway_risk),),
        )
        with pytest.raises(EngineError):
            evaluate(gateway_risk, criteria, policy)

    def test_material_monotone_in_added_states(self, gateway_risk, policy):
        peak = demo.peak_state(gateway_risk)
        calm = demo.off_peak_state(gateway_risk)
        base = evaluate(gateway_risk, _criteria([peak]), policy)
        extended = evaluate(gateway_risk, _criteria([peak, calm]), policy)
        assert base.material
        assert extended.material  # adding a state never un-materializes


def _decision(risk_id, priority):
    return TriageDecision(
        risk_id=risk_id, material=priority > 0,
        triggering_states=(), priority=priority, rationale="",
    )


class TestRank:
    def test_descending_priority(self):
        ranked = rank([_decision("a", 2), _decision("b", 6), _decision("c", 0)])
        assert [d.risk_id for d in ranked] == ["b", "a", "c"]

    def test_tie_break_by_id(self):
        ranked = rank([_decision("b", 3), _decision("a", 3)])
        assert [d.risk_id for d in ranked] == ["a", "b"]

    def test_empty(self):
        assert rank([]) == []

    @given(st.lists(st.tuples(
        st.text(alphabet="abcdef", min_size=1, max_size=3),
        st.floats(0, 100, allow_nan=False),
    ), max_size=20))
    def test_permutation_and_determinism(self, rows):
        decisions = [_decision(rid, p) for rid, p in rows]
        ranked = rank(decisions)
        assert sorted(d.risk_id for d in ranked) == sorted(d.risk_id for d in decisions)
        assert rank(list(reversed(decisions))) == ranked
        priorities = [d.priority for d in ranked]
        assert priorities == sorted(priorities, reverse=True)
