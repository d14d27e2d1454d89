import pytest

from riskpipe import demo
from riskpipe.heatmap import default_policy


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance" in nodeid and getattr(report, "when", "call") == "call":
                rows.append((nodeid.split("::")[-1], outcome == "passed"))
    if rows:
        terminalreporter.write_sep("=", "acceptance criteria")
        for name, ok in sorted(rows):
            terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")


@pytest.fixture
def policy():
    return default_policy()


@pytest.fixture
def gateway_risk():
    return demo.gateway_risk()


@pytest.fixture
def gateway_risk_3dim():
    return demo.gateway_risk(include_other=False)


@pytest.fixture
def gateway_bowtie():
    return demo.gateway_bowtie()


@pytest.fixture
def peak_state(gateway_risk):
    return demo.peak_state(gateway_risk)


@pytest.fixture
def off_peak_state(gateway_risk):
    return demo.off_peak_state(gateway_risk)


@pytest.fixture
def gateway_result(gateway_bowtie):
    from riskpipe.transform import to_dag

    return to_dag(gateway_bowtie)
