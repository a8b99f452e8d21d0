import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from gbmst.gb_core import GranularBall

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def make_ball(center, radius, count=3):
    """A ball with given geometry; members/sum are placeholders."""
    c = np.asarray(center, dtype=np.float64)
    return GranularBall(np.arange(count), c, float(radius), float(radius) * count / 2, float(radius) / 2)


@pytest.fixture
def record_acceptance():
    def record(tag: str, ok: bool, detail: str) -> None:
        line = f"{tag} {'PASS' if ok else 'FAIL'}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
