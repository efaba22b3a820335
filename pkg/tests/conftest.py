"""Shared reference scenarios.

Fronts are cached per session: every module test reuses the same four
profiles at the reference parameters (b = 1, alpha = 5/8 stationary,
alpha = 0.5 and c = 1 traveling).
"""
import numpy as np
import pytest

from degnagumo import (ModelSpec, GridConfig, solve_front, stationary_alpha,
                       select_weight)


@pytest.fixture(scope="session")
def sn_model():
    return ModelSpec.shigesada_cubic(1.0, stationary_alpha(1.0))


@pytest.fixture(scope="session")
def half_model():
    return ModelSpec.shigesada_cubic(1.0, 0.5)


@pytest.fixture(scope="session")
def sn_front(sn_model):
    return solve_front(sn_model, "sN-decreasing", grid=GridConfig(N=4000))


@pytest.fixture(scope="session")
def sn_inc_front(sn_model):
    return solve_front(sn_model, "sN-increasing", grid=GridConfig(N=4000))


@pytest.fixture(scope="session")
def nd_front(half_model):
    return solve_front(half_model, "Nd", 1.0, GridConfig(N=4000))


@pytest.fixture(scope="session")
def nn_front(half_model):
    return solve_front(half_model, "Nn", 1.0, GridConfig(N=4000))


@pytest.fixture(scope="session")
def nd_plan(half_model):
    return select_weight(half_model, "Nd", 1.0)


@pytest.fixture(scope="session")
def nn_plan(half_model):
    return select_weight(half_model, "Nn", 1.0)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20261019)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
