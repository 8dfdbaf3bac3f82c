"""Comparator selectors: successive sample-average approximation and a
one-shot uniform allocation.

Both produce the same RunOutcome trace format as the phased selector so
the harness can aggregate them interchangeably. Their phase records carry
empty gap maps (neither uses a gap rule), and a failing phase records
`deactivated=None` since nothing is removed on failure.
"""

from __future__ import annotations

import enum

import numpy as np

from .engine import (
    DECISION_ACCEPTED,
    DECISION_REJECTED,
    EXIT_ALL_ACCEPTED,
    EXIT_NONE,
    STATUS_FAIL,
    STATUS_SUCCESS,
    PhaseRecord,
    RunOutcome,
)
from .instance import BanditInstance, rank
from .sampling import RandomStream

__all__ = ["BaselineKind", "run_successive_saa", "run_uniform_top_m"]


class BaselineKind(enum.Enum):
    """The two comparator algorithms, each mapping to one run operation."""

    SUCCESSIVE_SAA = "successive_saa"
    UNIFORM_TOP_M = "uniform_top_m"

    def run(
        self,
        instance: BanditInstance,
        horizon: int,
        stream: RandomStream,
        *,
        record_phases: bool = True,
    ) -> RunOutcome:
        if self is BaselineKind.SUCCESSIVE_SAA:
            return run_successive_saa(
                instance, horizon, stream, record_phases=record_phases
            )
        return run_uniform_top_m(
            instance, horizon, stream, record_phases=record_phases
        )


def _even_split(budget: int, parts: int) -> list[int]:
    """Split `budget` into `parts` integers differing by at most 1,
    remainders to the earliest parts."""
    base, extra = divmod(budget, parts)
    return [base + 1 if i < extra else base for i in range(parts)]


def run_successive_saa(
    instance: BanditInstance,
    horizon: int,
    stream: RandomStream,
    *,
    record_phases: bool = True,
) -> RunOutcome:
    """Select one arm per phase by plain sample-average approximation.

    The budget is split into m equal phase budgets; within a phase every
    still-active arm receives an equal share (remainders to lowest ids).
    Each phase picks the best empirical-mean arm among the arms whose
    cumulative empirical cost is within the threshold, and deactivates
    it. Samples accumulate across phases. Fails at the first phase with
    no empirically feasible arm.
    """
    num_arms, m = instance.num_arms, instance.m
    if horizon < m * num_arms:
        raise ValueError(
            f"budget {horizon} below m*|A| = {m * num_arms}; "
            "every phase must afford one pull per arm"
        )
    phase_budgets = _even_split(horizon, m)

    active = list(instance.arm_ids)
    counts = np.zeros(num_arms, dtype=np.int64)
    reward_sums = np.zeros(num_arms)
    cost_sums = np.zeros(num_arms)
    selections: list[int | None] = [None] * m
    records: list[PhaseRecord] = []
    total_pulls = 0

    for k in range(1, m + 1):
        shares = _even_split(phase_budgets[k - 1], len(active))
        for a, cnt in zip(active, shares):
            if cnt == 0:
                continue
            rewards, costs = stream.pull_block(instance, a, cnt)
            reward_sums[a] += rewards.sum()
            cost_sums[a] += costs.sum()
            counts[a] += cnt
            total_pulls += cnt

        cost_map = {a: float(cost_sums[a]) / int(counts[a]) for a in active}
        feasible = frozenset(a for a in active if cost_map[a] <= instance.tau)
        mean_map = {
            a: float(reward_sums[a]) / int(counts[a]) for a in sorted(feasible)
        }
        if not feasible:
            if record_phases:
                records.append(
                    PhaseRecord(
                        k=k,
                        active_set=frozenset(active),
                        empirical_cost=cost_map,
                        empirical_feasible=feasible,
                        empirical_mean=mean_map,
                        empirical_gap={},
                        m_k=m - k + 1,
                        deactivated=None,
                        decision=DECISION_REJECTED,
                        exit=EXIT_NONE,
                    )
                )
            return RunOutcome(
                STATUS_FAIL, tuple(selections), tuple(records), total_pulls
            )

        chosen = rank(mean_map, feasible).argmax
        selections[k - 1] = chosen
        if record_phases:
            records.append(
                PhaseRecord(
                    k=k,
                    active_set=frozenset(active),
                    empirical_cost=cost_map,
                    empirical_feasible=feasible,
                    empirical_mean=mean_map,
                    empirical_gap={},
                    m_k=m - k + 1,
                    deactivated=chosen,
                    decision=DECISION_ACCEPTED,
                    exit=EXIT_ALL_ACCEPTED if k == m else EXIT_NONE,
                )
            )
        active.remove(chosen)

    return RunOutcome(
        STATUS_SUCCESS, tuple(selections), tuple(records), total_pulls
    )


def run_uniform_top_m(
    instance: BanditInstance,
    horizon: int,
    stream: RandomStream,
    *,
    record_phases: bool = True,
) -> RunOutcome:
    """One-shot control baseline: uniform allocation, single classification.

    Every arm is played floor(H/|A|) times; the empirically feasible arms
    are ranked once by empirical mean and the top m are returned. With
    fewer than m empirically feasible arms the outcome is a failure
    carrying the ranked feasible arms as a prefix.
    """
    num_arms, m = instance.num_arms, instance.m
    if horizon < num_arms:
        raise ValueError("budget below arm count")
    per_arm = horizon // num_arms

    cost_map: dict[int, float] = {}
    mean_all: dict[int, float] = {}
    for a in instance.arm_ids:
        rewards, costs = stream.pull_block(instance, a, per_arm)
        cost_map[a] = float(costs.sum()) / per_arm
        mean_all[a] = float(rewards.sum()) / per_arm
    total_pulls = per_arm * num_arms

    feasible = frozenset(a for a in instance.arm_ids if cost_map[a] <= instance.tau)
    mean_map = {a: mean_all[a] for a in sorted(feasible)}
    selections: list[int | None] = [None] * m
    if feasible:
        ranking = rank(mean_map, feasible)
        for r in range(1, min(m, len(feasible)) + 1):
            selections[r - 1] = ranking.arm_at(r)
    success = all(s is not None for s in selections)
    status = STATUS_SUCCESS if success else STATUS_FAIL

    records: tuple[PhaseRecord, ...] = ()
    if record_phases:
        records = (
            PhaseRecord(
                k=1,
                active_set=frozenset(instance.arm_ids),
                empirical_cost=cost_map,
                empirical_feasible=feasible,
                empirical_mean=mean_map,
                empirical_gap={},
                m_k=m,
                deactivated=None,
                decision=DECISION_ACCEPTED if success else DECISION_REJECTED,
                exit=EXIT_ALL_ACCEPTED if success else EXIT_NONE,
            )
        ,)
    return RunOutcome(status, tuple(selections), records, total_pulls)
