import pytest

from uavmarl.scenario import Scenario

# Filled by test_acceptance.py; printed once at the end of the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def tiny_scenario():
    """Two UAVs over a small user field; fast enough for per-test episodes."""
    return Scenario.from_mapping(dict(M=2, L=6, K=2, J=2, num_slots=30, speed_mps=40.0,
                                      start_angles_deg=[0.0, 90.0], epsilon=0.5))


@pytest.fixture
def close_range_scenario():
    """One hovering UAV and one user on a 50 m disk; QoS always reachable."""
    return Scenario.from_mapping(dict(M=1, L=1, K=1, J=1, num_slots=40, speed_mps=0.0,
                                      radius_m=50.0, start_angles_deg=[0.0]))
