import json

import pytest
from fastapi.testclient import TestClient

from riskpipe import demo
from riskpipe.bowtie import write_xml
from riskpipe.cli import main
from riskpipe.heatmap import dump_risk, risk_to_json
from riskpipe.service import create_app

PEAK_ARG = "load=Peak,change-complexity=High,third-party=Degraded,other=Baseline"
OFF_PEAK_ARG = "load=Off-Peak,change-complexity=Low,third-party=Healthy,other=Baseline"


@pytest.fixture
def data_dir(tmp_path):
    return str(tmp_path / "store")


@pytest.fixture
def seeded(tmp_path, data_dir):
    risk_file = tmp_path / "gateway.json"
    risk_file.write_bytes(dump_risk(demo.gateway_risk()))
    bowtie_file = tmp_path / "bowtie.xml"
    bowtie_file.write_bytes(write_xml(demo.gateway_bowtie()))
    assert main(["--data", data_dir, "risk", "add", str(risk_file)]) == 0
    assert main([
        "--data", data_dir, "bowtie", "validate",
        "--risk", "gateway", "--file", str(bowtie_file), "--store",
    ]) == 0
    assert main(["--data", data_dir, "transform", "--risk", "gateway"]) == 0
    return data_dir


def _run_json(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    assert code == 0, captured.err
    return json.loads(captured.out)


class TestCommands:
    def test_risk_add_show(self, seeded, capsys):
        body = _run_json(capsys, ["--data", seeded, "risk", "show", "gateway"])
        assert body["risk"]["id"] == "gateway"
        assert body["revision"] == 1

    def test_slice(self, seeded, capsys):
        body = _run_json(capsys, [
            "--data", seeded, "slice", "--risk", "gateway", "--state", PEAK_ARG,
        ])
        assert body["grade"]["name"] == "non-acceptable"
        assert body["xAdj"] == 2.8
        assert body["yAdjMetric"] == 900.0

    def test_whatif_barrier_ordering(self, seeded, capsys):
        works = _run_json(capsys, [
            "--data", seeded, "whatif", "--dag", "gateway-deterministic",
            "--do", "ft-2=works",
        ])["posteriors"]["outage"]["true"]
        fails = _run_json(capsys, [
            "--data", seeded, "whatif", "--dag", "gateway-deterministic",
            "--do", "ft-2=fails",
        ])["posteriors"]["outage"]["true"]
        assert works <= fails

    def test_infer(self, seeded, capsys):
        body = _run_json(capsys, [
            "--data", seeded, "infer", "--dag", "gateway-deterministic",
            "--evidence", "outage=true",
        ])
        assert body["posteriors"]["outage.safe"]["safe"] == 0.0

    def test_triage_empty_store(self, data_dir, capsys):
        body = _run_json(capsys, [
            "--data", data_dir, "triage", "--states", PEAK_ARG,
        ])
        assert body == {"decisions": []}

    def test_triage_no_material_risks_empty_list(self, seeded, capsys):
        # risks exist, but the only evaluated state grades acceptable
        body = _run_json(capsys, [
            "--data", seeded, "triage", "--states", OFF_PEAK_ARG,
        ])
        assert body == {"decisions": []}

    def test_triage_ranked(self, seeded, capsys):
        body = _run_json(capsys, [
            "--data", seeded, "triage",
            "--states", f"{PEAK_ARG};{OFF_PEAK_ARG}",
            "--criticality", "gateway=high",
        ])
        decision = body["decisions"][0]
        assert decision["material"] is True
        assert decision["priority"] == 3.0

    def test_bowtie_inject_stores_and_writes(self, seeded, tmp_path, capsys):
        out = tmp_path / "injected.xml"
        body = _run_json(capsys, [
            "--data", seeded, "bowtie", "inject", "--risk", "gateway",
            "--out", str(out),
        ])
        # both impact-side dimensions (load, other) gain chain nodes
        assert body["nodes"] == 13
        written = out.read_bytes()
        assert b"impact-load" in written and b"impact-other" in written

    def test_render_polar(self, seeded, tmp_path, capsys):
        out = tmp_path / "slice.svg"
        body = _run_json(capsys, [
            "--data", seeded, "render", "polar", "--risk", "gateway",
            "--state", PEAK_ARG, "--out", str(out),
        ])
        assert body["written"] == str(out)
        assert out.read_bytes().startswith(b"<?xml")

    def test_table_output(self, seeded, capsys):
        code = main([
            "--data", seeded, "--output", "table",
            "slice", "--risk", "gateway", "--state", PEAK_ARG,
        ])
        captured = capsys.readouterr()
        assert code == 0
        assert "grade.name = non-acceptable" in captured.out


class TestExitCodes:
    def test_unknown_subcommand_usage_error(self, data_dir):
        with pytest.raises(SystemExit) as exc:
            main(["--data", data_dir, "frobnicate"])
        assert exc.value.code == 2

    def test_validation_failure_exit_one(self, data_dir, tmp_path, capsys):
        bad = tmp_path / "bad.xml"
        bad.write_bytes(
            write_xml(demo.gateway_bowtie()).replace(b'lambda="0.2"', b'lambda="7"')
        )
        code = main([
            "--data", data_dir, "bowtie", "validate", "--file", str(bad),
        ])
        captured = capsys.readouterr()
        assert code == 1
        assert "PARAM_RANGE" in captured.err

    def test_unknown_entity_exit_one(self, data_dir, capsys):
        code = main(["--data", data_dir, "risk", "show", "ghost"])
        captured = capsys.readouterr()
        assert code == 1
        assert "NOT_FOUND" in captured.err

    def test_output_deterministic(self, seeded, capsys):
        argv = ["--data", seeded, "slice", "--risk", "gateway", "--state", PEAK_ARG]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        second = capsys.readouterr().out
        assert first == second


class TestServiceParity:
    def test_slice_payload_matches_endpoint(self, seeded, capsys):
        cli_body = _run_json(capsys, [
            "--data", seeded, "slice", "--risk", "gateway", "--state", PEAK_ARG,
        ])
        client = TestClient(create_app())
        client.post("/risks", json=risk_to_json(demo.gateway_risk()))
        http_body = client.post("/risks/gateway/slices", json={
            k: v for k, v in (kv.split("=") for kv in PEAK_ARG.split(","))
        }).json()
        assert cli_body == http_body

    def test_whatif_payload_matches_endpoint(self, seeded, capsys):
        cli_body = _run_json(capsys, [
            "--data", seeded, "whatif", "--dag", "gateway-deterministic",
            "--do", "ft-2=works",
        ])
        client = TestClient(create_app())
        client.post("/risks", json=risk_to_json(demo.gateway_risk()))
        client.put("/risks/gateway/bowtie", content=write_xml(demo.gateway_bowtie()))
        client.post("/risks/gateway/transform", json={})
        http_body = client.post(
            "/dags/gateway-deterministic/whatif",
            json={"intervention": {"ft-2": "works"}},
        ).json()
        assert cli_body == http_body

    def test_triage_payload_matches_endpoint(self, seeded, capsys):
        cli_body = _run_json(capsys, [
            "--data", seeded, "triage", "--states", PEAK_ARG,
            "--criticality", "gateway=high",
        ])
        client = TestClient(create_app())
        client.post("/risks", json=risk_to_json(demo.gateway_risk()))
        http_body = client.post("/triage", json={
            "contextStates": [
                {k: v for k, v in (kv.split("=") for kv in PEAK_ARG.split(","))}
            ],
            "temporalCriticality": {"gateway": "high"},
        }).json()
        assert cli_body == http_body
