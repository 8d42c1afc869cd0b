import os

import pytest
from hypothesis import HealthCheck, settings

from qozeta.branch import derive_invariants, random_branch, validate

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

RANDOM_SEEDS = list(range(25))


@pytest.fixture(scope="session")
def example():
    """The two-exponent surface (z^2 - x y^3)^4 - x^4 y^13."""
    return derive_invariants(validate([["1/2", "3/2"], ["1/2", "7/4"]], 2))


@pytest.fixture(scope="session")
def cusp():
    return derive_invariants(validate([["3/2"]], 1))


@pytest.fixture(scope="session")
def smooth():
    return derive_invariants(validate([["1/2"]], 1))


@pytest.fixture(scope="session")
def random_invariants():
    return [derive_invariants(random_branch(s)) for s in RANDOM_SEEDS]


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    rows = [module.RESULTS[k] for k in sorted(module.RESULTS)] if module else []
    if rows:
        terminalreporter.section("acceptance criteria")
        for row in rows:
            terminalreporter.write_line(row)
