import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from symbreak import group_core as gc
from symbreak import o3_geometry as geo

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def cyclic(m: int) -> gc.FiniteGroup:
    idx = np.arange(m)
    return gc.group_from_table((idx[:, None] + idx[None, :]) % m)


def sub_of(P: geo.PointGroup, mats) -> gc.Subgroup:
    """Subgroup of P.group given by matrices."""
    G = P.group
    idx = [G.index_of(m) for m in mats]
    assert all(i is not None for i in idx)
    return G.subgroup(idx)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# ------------------------------------------------------------- acceptance lines

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text, deviation=None): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    n, text = mark.args
    ok = rep.passed
    prev = _CRITERIA.get(n)
    if prev is not None:
        ok = ok and prev[0]
    _CRITERIA[n] = (ok, text, mark.kwargs.get("deviation"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, text, deviation = _CRITERIA[n]
        status = "FAIL" if not ok else "PASS with deviation" if deviation else "PASS"
        line = f"criterion {n}: {status}: {text}"
        if deviation and ok:
            line += f" [deviation: {deviation}]"
        terminalreporter.write_line(line)
