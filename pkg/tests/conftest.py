"""Shared instances used across the test modules.

`acceptance_instance` is the 6-arm Bernoulli instance the Monte-Carlo
criteria run on; `pointmass3` is the 3-arm deterministic instance with a
fully hand-checked trace. Both are frozen: tests pin exact values derived
from them.
"""

import pytest

from csar import ArmDistribution, BanditInstance, ground_truth

ACCEPTANCE_MUS = (0.9, 0.8, 0.7, 0.6, 0.5, 0.4)
ACCEPTANCE_COSTS = (0.2, 0.3, 0.7, 0.4, 0.8, 0.3)
ACCEPTANCE_TAU = 0.5
ACCEPTANCE_M = 2

MASTER_SEED = 20240601


def make_bernoulli_instance(mus, costs, tau, m) -> BanditInstance:
    return BanditInstance.create(
        [
            (ArmDistribution.bernoulli(mu), ArmDistribution.bernoulli(c))
            for mu, c in zip(mus, costs)
        ],
        tau=tau,
        m=m,
    )


def make_pointmass_instance(mus, costs, tau, m) -> BanditInstance:
    return BanditInstance.create(
        [
            (ArmDistribution.point_mass(mu), ArmDistribution.point_mass(c))
            for mu, c in zip(mus, costs)
        ],
        tau=tau,
        m=m,
    )


@pytest.fixture(scope="session")
def acceptance_instance() -> BanditInstance:
    return make_bernoulli_instance(
        ACCEPTANCE_MUS, ACCEPTANCE_COSTS, ACCEPTANCE_TAU, ACCEPTANCE_M
    )


@pytest.fixture(scope="session")
def acceptance_profile(acceptance_instance):
    return ground_truth(acceptance_instance)


@pytest.fixture(scope="session")
def pointmass3() -> BanditInstance:
    """Rewards (0.5, 0.8, 0.99), costs (0.2, 0.4, 0.9), tau 0.5, m 1."""
    return make_pointmass_instance((0.5, 0.8, 0.99), (0.2, 0.4, 0.9), 0.5, 1)


@pytest.fixture(scope="session")
def pointmass4() -> BanditInstance:
    """Rewards (0.9, 0.8, 0.7, 0.6), all costs 0.1, tau 0.5, m 2."""
    return make_pointmass_instance((0.9, 0.8, 0.7, 0.6), (0.1,) * 4, 0.5, 2)
