"""Re-record the API payload fixtures in test/fixtures/ from the engine.

Run from the repository root with riskpipe installed:
    python frontend/record_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from riskpipe import demo
from riskpipe.bowtie import write_xml
from riskpipe.heatmap import risk_to_json
from riskpipe.service import create_app

OUT = Path(__file__).parent / "test" / "fixtures"

PEAK = {
    "load": "Peak", "change-complexity": "High",
    "third-party": "Degraded", "other": "Baseline",
}
OFF_PEAK = {
    "load": "Off-Peak", "change-complexity": "Low",
    "third-party": "Healthy", "other": "Baseline",
}


def main() -> None:
    client = TestClient(create_app())
    client.post("/risks", json=risk_to_json(demo.gateway_risk()))
    client.put("/risks/gateway/bowtie", content=write_xml(demo.gateway_bowtie()))
    client.post("/risks/gateway/transform", json={})
    dag = "gateway-deterministic"

    def save(name: str, payload: dict) -> None:
        (OUT / name).write_text(json.dumps(payload, indent=2) + "\n")

    save("risk.json", client.get("/risks/gateway").json())
    save("slice-peak.json", client.post("/risks/gateway/slices", json=PEAK).json())
    save("slice-offpeak.json", client.post("/risks/gateway/slices", json=OFF_PEAK).json())
    state = ",".join(f"{k}={v}" for k, v in PEAK.items())
    (OUT / "polar-peak.svg").write_bytes(
        client.get(f"/risks/gateway/polar?state={state}").content
    )
    save("dag.json", client.get(f"/dags/{dag}").json())
    save("activation-nodes.json", client.get(f"/dags/{dag}/activation-nodes").json())
    save("infer-baseline.json",
         client.post(f"/dags/{dag}/infer", json={"evidence": {}}).json())
    save("whatif-empty.json",
         client.post(f"/dags/{dag}/whatif",
                     json={"evidence": {}, "intervention": {}}).json())
    for node, value in (("et-1", "works"), ("et-1", "fails"), ("ft-2", "works")):
        save(f"whatif-{node.replace('-', '')}-{value}.json",
             client.post(f"/dags/{dag}/whatif",
                         json={"intervention": {node: value}}).json())
    (OUT / "bowtie.xml").write_bytes(client.get("/risks/gateway/bowtie").content)
    save("trace-ft2.json", client.get(f"/dags/{dag}/trace/ft-2").json())
    save("trace-outcome.json", client.get(f"/dags/{dag}/trace/outage.safe").json())
    save("error-422.json",
         client.post("/risks/gateway/slices", json={"load": "Peak"}).json())
    print("recorded", len(list(OUT.iterdir())), "fixtures into", OUT)


if __name__ == "__main__":
    main()
