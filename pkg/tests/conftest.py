from __future__ import annotations

import os
import sys
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from cayley.fields import GF, QQ  # noqa: E402
from cayley.surface import SurfaceModel  # noqa: E402

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow, HealthCheck.large_base_example]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SMALL_Q = (2, 3, 4, 5, 7, 8, 9)
METRIC_Q = (4, 5, 7, 8, 9)


@lru_cache(maxsize=None)
def surface(q: int | None) -> SurfaceModel:
    return SurfaceModel(QQ() if q is None else GF(q))


@pytest.fixture(params=SMALL_Q, ids=lambda q: f"q{q}")
def model(request) -> SurfaceModel:
    return surface(request.param)


@pytest.fixture(params=METRIC_Q, ids=lambda q: f"q{q}")
def metric_model(request) -> SurfaceModel:
    return surface(request.param)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
