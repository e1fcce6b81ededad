import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test outcome decides PASS/FAIL."""

    def record(label: str, detail: str = "") -> None:
        _ACCEPTANCE[request.node.nodeid] = (label, detail)

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and "criterion" in getattr(item, "fixturenames", ()):
        label, detail = _ACCEPTANCE.get(item.nodeid, (item.name, ""))
        _ACCEPTANCE[item.nodeid] = (label, detail, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    rows = [v for v in _ACCEPTANCE.values() if len(v) == 3]
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for label, detail, verdict in sorted(rows):
        terminalreporter.write_line(f"[{verdict}] {label}  {detail}")
