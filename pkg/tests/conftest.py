import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from freetri import make_ring

settings.register_profile("freetri", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("freetri")

# rings small enough for exhaustive element sweeps
SMALL_RINGS = ["zmod4", "galois4:2", "dual2:1", "dual2:2"]
ALL_RINGS = SMALL_RINGS + ["galois4:3", "dual2:3"]


@pytest.fixture(params=SMALL_RINGS)
def ring(request):
    return make_ring(request.param)


@pytest.fixture(params=ALL_RINGS)
def any_ring(request):
    return make_ring(request.param)


@pytest.fixture
def Z4():
    return make_ring("zmod4")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# acceptance criteria report: one line per criterion at the end of the run
ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def acceptance(request):
    """Call ``acceptance(n, detail)`` after the checks; failure is recorded if the test errors."""
    state = {}

    def record(n: int, detail: str):
        state["n"], state["detail"] = n, detail

    yield record
    if "n" in state:
        rep = getattr(request.node, "rep_call", None)
        ok = rep is not None and rep.passed
        ACCEPTANCE[state["n"]] = f"criterion {state['n']}: {'PASS' if ok else 'FAIL'}  {state['detail']}"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
