import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Load or compile the numba kernels once so timings exclude JIT cost."""
    from decaykit.planar import PlanarConfig, reflection_tensor_quadrature

    reflection_tensor_quadrature(PlanarConfig(0.1, 2.25))
    yield


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import REPORT

    if REPORT:
        terminalreporter.section("acceptance criteria")
        for number in sorted(REPORT):
            terminalreporter.write_line(REPORT[number])
