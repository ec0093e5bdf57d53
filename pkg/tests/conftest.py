import pytest
from hypothesis import HealthCheck, settings

from dgext.linalg.ring import polynomial_ring, quotient_ring

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(params=[2, 3], ids=["F2", "F3"])
def prime(request):
    return request.param


@pytest.fixture
def r2():
    return polynomial_ring(2)


@pytest.fixture
def r2x2():
    return quotient_ring(2, "X^2")


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
