import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("fast", max_examples=10, deadline=None)
settings.register_profile("default", max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from shadowmgr.algebra import dihedral_quandle, regular_qset  # noqa: E402
from shadowmgr.cocycles import coboundary_of_1cochain, lift_mgr, mochizuki  # noqa: E402
from shadowmgr.mgr import XSetAction, conjugation_mgr  # noqa: E402
from shadowmgr.repro import pipeline  # noqa: E402

S3 = [
    [0, 1, 2, 3, 4, 5],
    [1, 2, 0, 5, 3, 4],
    [2, 0, 1, 4, 5, 3],
    [3, 4, 5, 0, 1, 2],
    [4, 5, 3, 2, 0, 1],
    [5, 3, 4, 1, 2, 0],
]


@pytest.fixture(scope="session")
def ex72():
    """(R_3)^3 through one coordinate, Q x Z_2, Z_3 coefficients."""
    return pipeline("single-letter")


@pytest.fixture(scope="session")
def lemma():
    """(R_3)^3 through all coordinates, Q x Z_6 (N = 162)."""
    return pipeline("triple-letter")


def _mini():
    r = dihedral_quandle(3)
    y = regular_qset(r)
    m, x, theta = lift_mgr(mochizuki(3), r, y, 3)
    return m, x, theta


def _s3():
    c = conjugation_mgr(S3, name="conj(S3)")
    cx = XSetAction(c, c.op.copy())
    theta = coboundary_of_1cochain(np.random.default_rng(1).integers(0, 5, (6, 6)), 5, c, cx)
    return c, cx, theta


@pytest.fixture(scope="session")
def matrix(ex72):
    """Three (MGR, X-set, cocycle) triples of different flavours."""
    return {
        "ex72": (ex72.mgr, ex72.xset, ex72.theta),
        "R3xZ6": _mini(),
        "conj-S3": _s3(),
    }


# One line per acceptance criterion in the terminal summary.
ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and not rep.failed):
        return
    n, title = mark.args
    status = "PASS" if rep.passed else "FAIL"
    if ACCEPTANCE.get(n, ("", "PASS"))[1] == "FAIL":
        status = "FAIL"
    ACCEPTANCE[n] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, status = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")
