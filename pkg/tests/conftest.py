import time

import pytest

RUNTIME_BUDGET = 300.0
RUNTIME_CRITERION = 9
CRITERIA = range(1, 11)

_RESULTS = pytest.StashKey[dict]()
_START = pytest.StashKey[float]()


def pytest_configure(config):
    config.stash[_RESULTS] = {}
    config.stash[_START] = time.perf_counter()


@pytest.fixture
def criterion(request):
    """Record a (passed, detail) outcome against an acceptance criterion number."""
    results = request.config.stash[_RESULTS]

    def record(number, passed, detail):
        results.setdefault(number, []).append((bool(passed), detail))
        return passed

    return record


def _elapsed(config):
    return time.perf_counter() - config.stash[_START]


def pytest_sessionfinish(session, exitstatus):
    if session.config.stash[_RESULTS] and _elapsed(session.config) >= RUNTIME_BUDGET:
        session.exitstatus = pytest.ExitCode.TESTS_FAILED


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash[_RESULTS]
    if not results:
        return
    elapsed = _elapsed(config)
    terminalreporter.section("acceptance criteria")
    for n in CRITERIA:
        parts = list(results.get(n, []))
        if n == RUNTIME_CRITERION and parts:
            parts.append((elapsed < RUNTIME_BUDGET,
                          f"session runtime {elapsed:.1f} s (budget {RUNTIME_BUDGET:.0f} s)"))
        if not parts:
            terminalreporter.write_line(f"criterion {n:2d}: NOT RUN")
            continue
        ok = all(p for p, _ in parts)
        detail = "; ".join(d for _, d in parts)
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
