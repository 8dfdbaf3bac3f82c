"""Constrained successive accept-or-reject over a sampled bandit.

`run_csar` drives one budgeted run: samples are drawn up front as per-arm
tapes, reduced to cumulative sums at the phase boundaries, and handed to
the phase-loop kernel selected in `csar.backend`. The full per-phase audit
trail (`PhaseRecord`) is rebuilt from the kernel outputs unless the caller
asks for the compact form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backend import run_phase_loop
from .instance import BanditInstance, ComplexityProfile, rank
from .sampling import RandomStream
from .schedule import PhaseSchedule

STATUS_SUCCESS = "success"
STATUS_FAIL = "fail"

DECISION_ACCEPTED = "accepted"
DECISION_REJECTED = "rejected"
DECISION_FORCED = "forced_infeasible_eviction"

EXIT_NONE = "none"
EXIT_ALL_ACCEPTED = "all_accepted"
EXIT_LAST_PAIR = "last_pair_shortcut"

_DECISION_NAMES = (DECISION_REJECTED, DECISION_ACCEPTED, DECISION_FORCED)
_EXIT_NAMES = (EXIT_NONE, EXIT_ALL_ACCEPTED, EXIT_LAST_PAIR)


@dataclass(frozen=True)
class PhaseRecord:
    """Audit record for one deactivation phase.

    Maps are keyed by arm id. `empirical_cost` covers every arm active at
    the start of the phase (+inf when the phase had zero samples per arm),
    `empirical_mean` only the empirically feasible arms, and
    `empirical_gap` is populated only when the feasible set was larger
    than the remaining slot count `m_k`. `deactivated` is None only in
    baseline traces for a phase that failed without removing an arm.
    """

    k: int
    active_set: frozenset[int]
    empirical_cost: dict[int, float]
    empirical_feasible: frozenset[int]
    empirical_mean: dict[int, float]
    empirical_gap: dict[int, float]
    m_k: int
    deactivated: int | None
    decision: str
    exit: str


@dataclass(frozen=True)
class RunOutcome:
    """Result of one algorithm run.

    `selections` always has one entry per target slot, in acceptance
    order; unfilled slots are None and force status "fail".
    """

    status: str
    selections: tuple[int | None, ...]
    phases: tuple[PhaseRecord, ...]
    total_pulls: int

    @property
    def is_success(self) -> bool:
        return self.status == STATUS_SUCCESS

    @property
    def selected_set(self) -> frozenset[int]:
        """Filled slots as a set (ignores empty slots)."""
        return frozenset(s for s in self.selections if s is not None)


def empirical_gap(
    means: dict[int, float], feasible: frozenset[int] | set[int], m_k: int
) -> dict[int, float]:
    """Gap of each feasible arm around the top-`m_k` boundary.

    For an arm ranked r among the feasible arms by empirical mean
    (descending, ties by lowest id), the gap is its distance to the
    highest mean outside the top m_k (when r <= m_k) or to the lowest
    mean inside it (when r > m_k). Defined only when the feasible set
    has more than m_k arms.
    """
    if m_k < 1:
        raise ValueError("m_k must be at least 1")
    if len(feasible) <= m_k:
        raise ValueError("gap undefined")
    ranking = rank(means, feasible)
    v_in = ranking.value_at(m_k)
    v_out = ranking.value_at(m_k + 1)
    gaps: dict[int, float] = {}
    for a in sorted(feasible):
        mu = means[a]
        gaps[a] = mu - v_out if ranking.rank_of[a] <= m_k else v_in - mu
    return gaps


def _boundary_sums(tape: np.ndarray, n: np.ndarray) -> np.ndarray:
    """Per-arm sums of the first n_k samples, one column per phase."""
    num_arms = tape.shape[0]
    csum = np.cumsum(tape, axis=1)
    padded = np.concatenate([np.zeros((num_arms, 1)), csum], axis=1)
    return np.ascontiguousarray(padded[:, n])


def run_csar(
    instance: BanditInstance,
    schedule: PhaseSchedule,
    stream: RandomStream,
    *,
    record_phases: bool = True,
) -> RunOutcome:
    """Run the constrained accept-or-reject selector once.

    Phases run k = 1..|A|-1 unless an exit fires. Each phase classifies
    the active arms by empirical cost against the threshold, deactivates
    one arm (largest gap when too many look feasible; best mean when at
    most m_k do; worst cost when none do), and accepts the deactivated
    arm exactly when it is the top feasible arm by empirical mean. With
    `record_phases=False` the outcome carries no phase records, which is
    cheaper for large sweeps; decisions are identical either way.
    """
    if schedule.num_arms != instance.num_arms:
        raise ValueError(
            f"schedule built for {schedule.num_arms} arms, "
            f"instance has {instance.num_arms}"
        )
    n = np.asarray(schedule.n, dtype=np.int64)
    rewards, costs = stream.tape(instance, int(n[-1]))
    reward_sums = _boundary_sums(rewards, n)
    cost_sums = _boundary_sums(costs, n)

    (status_flag, raw_sel, phases_run, deactivated, decision, m_pre,
     feasible, exit_code) = run_phase_loop(
        reward_sums, cost_sums, n, instance.tau, instance.m
    )

    selections = tuple(int(s) if s >= 0 else None for s in raw_sel)
    status = STATUS_SUCCESS if status_flag else STATUS_FAIL
    total_pulls = int(schedule.phase_ends[phases_run - 1])

    records: tuple[PhaseRecord, ...] = ()
    if record_phases:
        records = _build_phase_records(
            instance, n, reward_sums, cost_sums, phases_run,
            deactivated, decision, m_pre, feasible, exit_code,
        )
    return RunOutcome(status, selections, records, total_pulls)


def _build_phase_records(
    instance, n, reward_sums, cost_sums, phases_run,
    deactivated, decision, m_pre, feasible, exit_code,
) -> tuple[PhaseRecord, ...]:
    active = set(instance.arm_ids)
    records = []
    for k in range(phases_run):
        nk = int(n[k])
        if nk > 0:
            cost_map = {a: float(cost_sums[a, k]) / nk for a in sorted(active)}
        else:
            cost_map = {a: float("inf") for a in sorted(active)}
        feas = frozenset(a for a in active if feasible[k, a])
        mean_map = {a: float(reward_sums[a, k]) / nk for a in sorted(feas)}
        m_k = int(m_pre[k])
        gap_map = (
            empirical_gap(mean_map, feas, m_k) if len(feas) > m_k else {}
        )
        is_last = k == phases_run - 1
        records.append(
            PhaseRecord(
                k=k + 1,
                active_set=frozenset(active),
                empirical_cost=cost_map,
                empirical_feasible=feas,
                empirical_mean=mean_map,
                empirical_gap=gap_map,
                m_k=m_k,
                deactivated=int(deactivated[k]),
                decision=_DECISION_NAMES[decision[k]],
                exit=_EXIT_NAMES[exit_code] if is_last else EXIT_NONE,
            )
        )
        active.remove(int(deactivated[k]))
    return tuple(records)


@dataclass(frozen=True)
class ZetaViolation:
    """One concentration breach: a deviation exceeding its allowance."""

    k: int
    arm_id: int
    kind: str  # "cost" or "reward"
    deviation: float
    allowed: float


@dataclass(frozen=True)
class ZetaReport:
    """Outcome of the per-phase concentration check.

    `holds` covers the evaluated phases only; `truncated` is set when the
    trace exited before phase |A_f| - 1 so later phases could not be
    checked.
    """

    holds: bool
    violations: tuple[ZetaViolation, ...]
    truncated: bool


def check_zeta(trace: RunOutcome, profile: ComplexityProfile) -> ZetaReport:
    """Check the good event backing the error bound, phase by phase.

    Through phase |A_f| - 1: every active arm's empirical cost stays
    within half its cost margin, and every empirically feasible arm's
    mean stays within a quarter of the largest true reward margin among
    the recorded feasible arms.
    """
    if not trace.phases:
        raise ValueError("trace has no phase records")
    limit = len(profile.feasible_set) - 1
    violations: list[ZetaViolation] = []
    evaluated = 0
    for record in trace.phases:
        if record.k > limit:
            break
        evaluated += 1
        for a in sorted(record.active_set):
            dev = abs(record.empirical_cost[a] - profile.costs[a])
            allowed = profile.delta_c[a] / 2.0
            if dev > allowed:
                violations.append(ZetaViolation(record.k, a, "cost", dev, allowed))
        if record.empirical_feasible:
            allowed = 0.25 * max(
                profile.delta[a] for a in record.empirical_feasible
            )
            for a in sorted(record.empirical_feasible):
                dev = abs(record.empirical_mean[a] - profile.means[a])
                if dev > allowed:
                    violations.append(
                        ZetaViolation(record.k, a, "reward", dev, allowed)
                    )
    return ZetaReport(
        holds=not violations,
        violations=tuple(violations),
        truncated=evaluated < limit,
    )


def outcome_to_dict(outcome: RunOutcome) -> dict:
    """JSON-compatible trace record with fixed field names."""
    return {
        "status": outcome.status,
        "selections": list(outcome.selections),
        "phases": [
            {
                "k": p.k,
                "active_set": sorted(p.active_set),
                "empirical_cost": {str(a): v for a, v in sorted(p.empirical_cost.items())},
                "empirical_feasible": sorted(p.empirical_feasible),
                "empirical_mean": {str(a): v for a, v in sorted(p.empirical_mean.items())},
                "empirical_gap": {str(a): v for a, v in sorted(p.empirical_gap.items())},
                "m_k": p.m_k,
                "deactivated": p.deactivated,
                "decision": p.decision,
                "exit": p.exit,
            }
            for p in outcome.phases
        ],
        "total_pulls": outcome.total_pulls,
    }
