import sys
from pathlib import Path

import pytest

from kcorekit.graph import build_graph

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE: dict[str, tuple[str, str]] = {}


@pytest.fixture
def record():
    """Log one acceptance line; ``ok=None`` marks a criterion as skipped."""
    def _record(criterion: str, ok, detail: str = ""):
        status = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
        ACCEPTANCE[criterion] = (status, detail)
        print(f"{status}  criterion {criterion}: {detail}")
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int("".join(c for c in k if c.isdigit())), k)):
        status, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{status}  criterion {key}: {detail}")


def complete(n):
    return build_graph((i, j) for i in range(n) for j in range(i + 1, n))


def star(leaves):
    return build_graph((0, i) for i in range(1, leaves + 1))


def path(n):
    return build_graph((i, i + 1) for i in range(n - 1))


def cycle(n):
    return build_graph((i, (i + 1) % n) for i in range(n))


def k4_plus_pendant():
    return build_graph([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
