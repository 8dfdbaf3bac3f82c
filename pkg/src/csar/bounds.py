"""Closed-form probability bounds for the phased selector.

Two upper bounds on the misidentification probability, differing in how
the per-arm margins enter the exponent (the source derivation states both
forms; we compute both and report both), plus a lower bound on the
probability that a successful run's selections come out in true-mean
order. Raw values above 1 are vacuous; reporting clips them to 1 with a
flag so decay curves stay plottable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .engine import DECISION_ACCEPTED, EXIT_LAST_PAIR, RunOutcome
from .instance import ComplexityProfile, rank
from .schedule import PhaseSchedule

__all__ = [
    "BoundReport",
    "RankingBoundInput",
    "theorem1_bound",
    "proof_two_term_bound",
    "bound_report",
    "ranking_bound_input",
    "ranking_lower_bound",
]


def _check_inputs(profile: ComplexityProfile, num_arms: int, horizon: int) -> None:
    if num_arms < 2:
        raise ValueError("bounds need at least 2 arms")
    if horizon < num_arms:
        raise ValueError("budget below arm count")


def theorem1_bound(
    profile: ComplexityProfile, num_arms: int, horizon: int, *, clip: bool = True
) -> float:
    """Misidentification bound driven by the unsquared complexity term.

    2|A|^2 exp(-(H-|A|) * d_min / ((ln|A| + 1/2) |A|)) with
    d_min = min over arms of min(cost margin / 2, reward margin / 8).
    """
    _check_inputs(profile, num_arms, horizon)
    if profile.delta_min <= 0.0:
        raise ValueError("vacuous bound")
    scale = (math.log(num_arms) + 0.5) * num_arms
    raw = 2.0 * num_arms**2 * math.exp(
        -(horizon - num_arms) * profile.delta_min / scale
    )
    return min(raw, 1.0) if clip else raw


def proof_two_term_bound(
    profile: ComplexityProfile, num_arms: int, horizon: int, *, clip: bool = True
) -> float:
    """Misidentification bound as the sum of the two Hoeffding terms.

    The cost term uses (min cost margin)^2 / 2 in the exponent numerator,
    the reward term (min reward margin)^2 / 8; both share the
    (ln|A| + 1/2) |A| scaling of the phase schedule.
    """
    _check_inputs(profile, num_arms, horizon)
    min_dc = min(profile.delta_c.values())
    min_d = min(profile.delta.values())
    if min_dc <= 0.0 or min_d <= 0.0:
        raise ValueError("vacuous bound")
    scale = (math.log(num_arms) + 0.5) * num_arms
    span = horizon - num_arms
    cost_term = 2.0 * num_arms**2 * math.exp(-span * min_dc**2 / (2.0 * scale))
    reward_term = 2.0 * num_arms**2 * math.exp(-span * min_d**2 / (8.0 * scale))
    raw = cost_term + reward_term
    return min(raw, 1.0) if clip else raw


@dataclass(frozen=True)
class BoundReport:
    """Both misidentification bounds at one horizon, clipped for reporting."""

    theorem1_bound: float
    proof_two_term_bound: float
    horizon: int
    clipped: bool


def bound_report(
    profile: ComplexityProfile, num_arms: int, horizon: int
) -> BoundReport:
    raw1 = theorem1_bound(profile, num_arms, horizon, clip=False)
    raw2 = proof_two_term_bound(profile, num_arms, horizon, clip=False)
    return BoundReport(
        theorem1_bound=min(raw1, 1.0),
        proof_two_term_bound=min(raw2, 1.0),
        horizon=horizon,
        clipped=raw1 > 1.0 or raw2 > 1.0,
    )


@dataclass(frozen=True)
class RankingBoundInput:
    """Per-slot evidence for the correct-ranking lower bound.

    One entry per selection slot, in slot order: the phase at which the
    slot was assigned, the cumulative per-arm pull count of that phase,
    and the true-mean gaps phi between the phase's empirically best
    feasible arm and its empirically ranked runners-up (positions
    2..m_k, truncated to the recorded feasible set). A slot assigned by
    the last-pair shortcut carries one remaining target, so its gap list
    is empty and its factor is 1.
    """

    accept_phases: tuple[int, ...]
    pulls: tuple[int, ...]
    phis: tuple[tuple[float, ...], ...]


def ranking_bound_input(
    trace: RunOutcome, profile: ComplexityProfile, schedule: PhaseSchedule
) -> RankingBoundInput:
    """Extract the ranking-bound evidence from a successful run trace.

    The gaps mix empirical ranks with true means: each phi compares the
    TRUE mean of the phase's empirical-rank-1 feasible arm against the
    TRUE mean of the arm at empirical rank j.
    """
    if not trace.is_success:
        raise ValueError("ranking bound needs a successful trace")
    if not trace.phases:
        raise ValueError("trace has no phase records")
    phases: list[int] = []
    pulls: list[int] = []
    phis: list[tuple[float, ...]] = []
    for record in trace.phases:
        entries = []
        if record.decision == DECISION_ACCEPTED:
            entries.append(record.m_k)
        if record.exit == EXIT_LAST_PAIR:
            entries.append(1)  # the shortcut slot has one target left
        for m_k in entries:
            ranking = rank(record.empirical_mean, record.empirical_feasible)
            top = profile.means[ranking.argmax]
            depth = min(m_k, len(record.empirical_feasible))
            phases.append(record.k)
            pulls.append(schedule.n[record.k - 1])
            phis.append(
                tuple(top - profile.means[ranking.arm_at(j)] for j in range(2, depth + 1))
            )
    return RankingBoundInput(
        accept_phases=tuple(phases), pulls=tuple(pulls), phis=tuple(phis)
    )


def ranking_lower_bound(input: RankingBoundInput) -> float:
    """Lower bound on the probability the filled slots are in true-mean order.

    Product over slots of max(0, 1 - (len(phi)) * exp(-n * min(phi)^2)).
    Slots with no runners-up contribute 1. Factors are clamped at 0
    individually so two vacuous slots cannot multiply into a positive
    bound.
    """
    bound = 1.0
    for n_k, phi in zip(input.pulls, input.phis):
        if not phi:
            continue
        low = min(phi)
        if low <= 0.0:
            raise ValueError("degenerate ranking gap")
        factor = 1.0 - len(phi) * math.exp(-n_k * low**2)
        bound *= max(factor, 0.0)
    return bound
