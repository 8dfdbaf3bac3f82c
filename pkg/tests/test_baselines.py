"""Tests for the two comparator selectors."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from csar.baselines import (
    BaselineKind,
    _even_split,
    run_successive_saa,
    run_uniform_top_m,
)
from csar.distributions import ArmDistribution
from csar.engine import (
    DECISION_ACCEPTED,
    DECISION_REJECTED,
    EXIT_ALL_ACCEPTED,
    EXIT_NONE,
    STATUS_FAIL,
    STATUS_SUCCESS,
)
from csar.instance import BanditInstance
from csar.sampling import RandomStream

from conftest import make_bernoulli_instance


@pytest.fixture(scope="module")
def hard_instance() -> BanditInstance:
    """Two near-threshold feasible arms plus one plainly infeasible arm."""
    return BanditInstance.create(
        [
            (ArmDistribution.bernoulli(0.6), ArmDistribution.bernoulli(0.45)),
            (ArmDistribution.bernoulli(0.5), ArmDistribution.bernoulli(0.45)),
            (ArmDistribution.bernoulli(0.4), ArmDistribution.point_mass(0.9)),
        ],
        tau=0.5,
        m=1,
    )


# ---------------------------------------------------------------- splitting


def test_even_split_examples():
    assert _even_split(10, 3) == [4, 3, 3]
    assert _even_split(9, 3) == [3, 3, 3]
    assert _even_split(2, 4) == [1, 1, 0, 0]


@given(budget=st.integers(0, 10_000), parts=st.integers(1, 64))
def test_even_split_laws(budget, parts):
    shares = _even_split(budget, parts)
    assert len(shares) == parts and sum(shares) == budget
    assert max(shares) - min(shares) <= 1
    assert shares == sorted(shares, reverse=True)  # remainders go earliest


# ---------------------------------------------------------------- saa


def test_saa_pointmass_trace(pointmass4):
    out = run_successive_saa(pointmass4, 100, RandomStream(3))
    assert out.status == STATUS_SUCCESS
    assert out.selections == (0, 1)
    assert out.total_pulls == 100
    assert len(out.phases) == 2

    p1, p2 = out.phases
    assert (p1.k, p1.m_k, p1.deactivated, p1.decision) == (1, 2, 0, DECISION_ACCEPTED)
    assert p1.active_set == frozenset({0, 1, 2, 3})
    assert p1.empirical_gap == {} and p1.exit == EXIT_NONE
    assert (p2.k, p2.m_k, p2.deactivated, p2.decision) == (2, 1, 1, DECISION_ACCEPTED)
    assert p2.active_set == frozenset({1, 2, 3})
    assert p2.exit == EXIT_ALL_ACCEPTED


def test_saa_pointmass_single_slot(pointmass3):
    out = run_successive_saa(pointmass3, 30, RandomStream(0))
    assert out.status == STATUS_SUCCESS and out.selections == (1,)
    assert out.total_pulls == 30


def test_saa_budget_error(pointmass4):
    with pytest.raises(ValueError, match=r"budget 7 below m\*\|A\| = 8"):
        run_successive_saa(pointmass4, 7, RandomStream(0))


def test_saa_uses_full_budget(acceptance_instance):
    for horizon in (12, 37, 100, 401):
        out = run_successive_saa(acceptance_instance, horizon, RandomStream(5))
        assert out.total_pulls == horizon


def test_saa_cumulative_means_match_tape_prefixes(acceptance_instance):
    """Phase records must reflect sums accumulated across phases, arm by arm."""
    inst = acceptance_instance
    horizon = 61
    out = run_successive_saa(inst, horizon, RandomStream(17))

    # replay the pull counts: per phase, the active arms split the phase
    # budget evenly in ascending-id order
    rewards, costs = RandomStream(17).tape(inst, horizon)
    counts = {a: 0 for a in inst.arm_ids}
    active = list(inst.arm_ids)
    for k, budget in enumerate(_even_split(horizon, inst.m), start=1):
        for a, cnt in zip(active, _even_split(budget, len(active))):
            counts[a] += cnt
        record = out.phases[k - 1]
        for a in record.active_set:
            expect = costs[a, : counts[a]].mean()
            assert record.empirical_cost[a] == pytest.approx(expect, abs=1e-12)
        for a in record.empirical_feasible:
            expect = rewards[a, : counts[a]].mean()
            assert record.empirical_mean[a] == pytest.approx(expect, abs=1e-12)
        if record.deactivated is not None:
            active.remove(record.deactivated)


def test_saa_failure_records_no_removal(hard_instance):
    """A phase with no feasible-looking arm fails in place."""
    hit = None
    for seed in range(500):
        out = run_successive_saa(hard_instance, 6, RandomStream(seed))
        if out.status == STATUS_FAIL:
            hit = out
            break
    assert hit is not None, "no failing seed found"
    assert None in hit.selections
    last = hit.phases[-1]
    assert last.deactivated is None
    assert last.decision == DECISION_REJECTED
    assert last.empirical_feasible == frozenset()
    assert last.exit == EXIT_NONE
    assert hit.total_pulls == 6


# ---------------------------------------------------------------- uniform


def test_uniform_pointmass_trace(pointmass4):
    out = run_uniform_top_m(pointmass4, 100, RandomStream(3))
    assert out.status == STATUS_SUCCESS
    assert out.selections == (0, 1)
    assert out.total_pulls == 100
    assert len(out.phases) == 1
    p = out.phases[0]
    assert (p.k, p.m_k, p.deactivated) == (1, 2, None)
    assert p.active_set == frozenset({0, 1, 2, 3})
    assert p.decision == DECISION_ACCEPTED and p.exit == EXIT_ALL_ACCEPTED
    assert p.empirical_gap == {}


def test_uniform_budget_error(pointmass4):
    with pytest.raises(ValueError, match="budget below arm count"):
        run_uniform_top_m(pointmass4, 3, RandomStream(0))


def test_uniform_discards_budget_remainder(pointmass3):
    out = run_uniform_top_m(pointmass3, 100, RandomStream(0))
    assert out.total_pulls == 99  # floor(100 / 3) pulls per arm
    assert out.selections == (1,)


def test_uniform_fail_witness(hard_instance):
    """Frozen seed where all arms look infeasible after 4 pulls each."""
    out = run_uniform_top_m(hard_instance, 12, RandomStream(4))
    assert out.status == STATUS_FAIL
    assert out.selections == (None,)
    assert out.total_pulls == 12
    p = out.phases[0]
    assert p.empirical_feasible == frozenset()
    assert p.deactivated is None
    assert p.decision == DECISION_REJECTED and p.exit == EXIT_NONE


def test_uniform_partial_fill_on_shortfall():
    """With m=2 and one feasible-looking arm, slot 1 fills and slot 2 stays empty."""
    inst = make_bernoulli_instance(
        (0.9, 0.8, 0.7), (0.05, 0.45, 0.45), 0.5, 2
    )
    hit = None
    for seed in range(500):
        out = run_uniform_top_m(inst, 9, RandomStream(seed))
        if len(out.phases[0].empirical_feasible) == 1:
            hit = out
            break
    assert hit is not None, "no single-feasible seed found"
    assert hit.status == STATUS_FAIL
    only = next(iter(hit.phases[0].empirical_feasible))
    assert hit.selections == (only, None)


# ---------------------------------------------------------------- shared


@pytest.mark.parametrize("kind", list(BaselineKind))
def test_baseline_determinism(kind, acceptance_instance):
    a = kind.run(acceptance_instance, 120, RandomStream(77))
    b = kind.run(acceptance_instance, 120, RandomStream(77))
    assert a == b


@pytest.mark.parametrize("kind", list(BaselineKind))
def test_baseline_dispatch_matches_direct(kind, acceptance_instance):
    direct = {
        BaselineKind.SUCCESSIVE_SAA: run_successive_saa,
        BaselineKind.UNIFORM_TOP_M: run_uniform_top_m,
    }[kind]
    assert kind.run(acceptance_instance, 120, RandomStream(8)) == direct(
        acceptance_instance, 120, RandomStream(8)
    )


@pytest.mark.parametrize("kind", list(BaselineKind))
def test_baseline_budget_ceiling(kind, acceptance_instance):
    for horizon in (12, 25, 83, 240):
        out = kind.run(acceptance_instance, horizon, RandomStream(9))
        assert out.total_pulls <= horizon


@pytest.mark.parametrize("kind", list(BaselineKind))
def test_baseline_record_phases_off(kind, acceptance_instance):
    full = kind.run(acceptance_instance, 120, RandomStream(12))
    compact = kind.run(
        acceptance_instance, 120, RandomStream(12), record_phases=False
    )
    assert compact.phases == ()
    assert (compact.status, compact.selections, compact.total_pulls) == (
        full.status,
        full.selections,
        full.total_pulls,
    )


@pytest.mark.parametrize("kind", list(BaselineKind))
def test_baseline_pointmass_success(kind, pointmass3, pointmass4):
    for seed in range(10):
        assert kind.run(pointmass3, 60, RandomStream(seed)).selections == (1,)
        assert kind.run(pointmass4, 60, RandomStream(seed)).selections == (0, 1)


def test_baseline_kind_values():
    assert BaselineKind.SUCCESSIVE_SAA.value == "successive_saa"
    assert BaselineKind.UNIFORM_TOP_M.value == "uniform_top_m"
