import xml.etree.ElementTree as ET

import pytest

from riskpipe import demo
from riskpipe.errors import EngineError
from riskpipe.heatmap import ContextState, RiskObject, compute_slice, render_polar

SVG_NS = "{http://www.w3.org/2000/svg}"


def _cells(svg: bytes):
    root = ET.fromstring(svg)
    return [
        el.attrib for el in root.iter(f"{SVG_NS}path")
        if el.attrib.get("class") == "cell"
    ]


def test_use_case_has_four_sectors_with_peak_highlighted(gateway_risk, policy):
    nd = compute_slice(gateway_risk, demo.peak_state(gateway_risk), policy)
    svg = render_polar(nd, gateway_risk)
    cells = _cells(svg)
    assert {c["data-dim"] for c in cells} == {
        "load", "change-complexity", "third-party", "other",
    }
    selected = [c for c in cells if c["data-selected"] == "true"]
    assert len(selected) == 4  # one highlighted band per dimension
    peak = next(c for c in selected if c["data-dim"] == "load")
    assert peak["data-level"] == "Peak"
    assert peak["fill"] == nd.grade.color


def test_three_dimensions_three_sectors(gateway_risk_3dim, policy):
    state = demo.peak_state(gateway_risk_3dim)
    nd = compute_slice(gateway_risk_3dim, state, policy)
    cells = _cells(render_polar(nd, gateway_risk_3dim))
    assert len({c["data-dim"] for c in cells}) == 3


def test_byte_determinism(gateway_risk, policy):
    nd = compute_slice(gateway_risk, demo.peak_state(gateway_risk), policy)
    assert render_polar(nd, gateway_risk) == render_polar(nd, gateway_risk)


def test_zero_dimensions_rejected(policy):
    risk = RiskObject(
        "bare", "no context", 0.0, 0.0,
        demo.likelihood_scale(), demo.impact_scale(),
    )
    nd = compute_slice(risk, ContextState.of({}), policy)
    with pytest.raises(EngineError) as err:
        render_polar(nd, risk)
    assert err.value.code == "POLAR_NO_DIMS"


def test_legend_names_dimensions_and_grade(gateway_risk, policy):
    nd = compute_slice(gateway_risk, demo.peak_state(gateway_risk), policy)
    svg = render_polar(nd, gateway_risk).decode("utf-8")
    assert "load: Peak" in svg
    assert "grade: non-acceptable" in svg


def test_band_count_follows_each_scale(gateway_risk, policy):
    nd = compute_slice(gateway_risk, demo.peak_state(gateway_risk), policy)
    cells = _cells(render_polar(nd, gateway_risk))
    per_dim = {}
    for c in cells:
        per_dim.setdefault(c["data-dim"], set()).add(c["data-level"])
    assert len(per_dim["load"]) == 4
    assert len(per_dim["change-complexity"]) == 3
    assert len(per_dim["other"]) == 2
