"""Bandit instances, rankings, and ground-truth complexity quantities.

An instance couples every arm with a reward law and a cost law on [0, 1],
a cost threshold `tau`, and a target count `m`. An arm is feasible when its
true mean cost is at most `tau`; the goal of the selection algorithms is
the set of the m feasible arms with the largest true mean rewards.

Ranking is always non-increasing by value with ties broken by ascending arm
id, which makes every argmax/argmin in the package deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from .distributions import ArmDistribution

__all__ = [
    "BanditInstance",
    "RankMap",
    "ComplexityProfile",
    "rank",
    "ground_truth",
    "epsilon_classification",
]


@dataclass(frozen=True)
class RankMap:
    """Bijection from a set of arms onto ranks 1..n, non-increasing by value.

    `by_rank[i - 1]` is the arm holding rank i. Equal values are ordered by
    ascending arm id, so rank 1 is the deterministic argmax.
    """

    domain: frozenset[int]
    rank_of: Mapping[int, int]
    value_of: Mapping[int, float]
    by_rank: tuple[int, ...]

    @property
    def argmax(self) -> int:
        """The unique rank-1 arm."""
        return self.by_rank[0]

    def arm_at(self, r: int) -> int:
        """Arm holding rank `r` (1-based)."""
        return self.by_rank[r - 1]

    def value_at(self, r: int) -> float:
        """Value of the arm holding rank `r`, i.e. the r-th largest value."""
        return self.value_of[self.by_rank[r - 1]]


def rank(values: Mapping[int, float], domain: Iterable[int]) -> RankMap:
    """Rank `domain` by `values`, largest first, ties by ascending arm id."""
    dom = frozenset(domain)
    if not dom:
        raise ValueError("empty ranking domain")
    missing = [a for a in dom if a not in values]
    if missing:
        raise ValueError(f"no value for arms {sorted(missing)}")
    order = sorted(dom, key=lambda a: (-values[a], a))
    return RankMap(
        domain=dom,
        rank_of={a: i + 1 for i, a in enumerate(order)},
        value_of={a: float(values[a]) for a in dom},
        by_rank=tuple(order),
    )


@dataclass(frozen=True)
class BanditInstance:
    """An ordered arm set with per-arm reward/cost laws, threshold, and target count.

    Arm ids are the positions 0..len(arms)-1. Construction rejects instances
    whose true feasible set is not strictly larger than `m`, since the
    selection target and the reward gaps are undefined otherwise.
    """

    arms: tuple[tuple[ArmDistribution, ArmDistribution], ...]
    tau: float
    m: int

    def __post_init__(self) -> None:
        if len(self.arms) < 2:
            raise ValueError("instance needs at least 2 arms")
        if self.m < 1:
            raise ValueError("target count m must be positive")
        feasible = sum(1 for _, cost in self.arms if cost.mean <= self.tau)
        if self.m >= feasible:
            raise ValueError("target count not below feasible count")

    @classmethod
    def create(
        cls,
        arms: Iterable[tuple[ArmDistribution, ArmDistribution]],
        tau: float,
        m: int,
    ) -> "BanditInstance":
        return cls(arms=tuple(arms), tau=float(tau), m=int(m))

    @property
    def num_arms(self) -> int:
        return len(self.arms)

    @property
    def arm_ids(self) -> range:
        return range(len(self.arms))

    def reward_dist(self, arm_id: int) -> ArmDistribution:
        return self.arms[arm_id][0]

    def cost_dist(self, arm_id: int) -> ArmDistribution:
        return self.arms[arm_id][1]

    def true_means(self) -> dict[int, float]:
        return {a: self.arms[a][0].mean for a in self.arm_ids}

    def true_costs(self) -> dict[int, float]:
        return {a: self.arms[a][1].mean for a in self.arm_ids}

    def to_dict(self) -> dict[str, Any]:
        return {
            "arms": [
                {"reward": r.to_dict(), "cost": c.to_dict()} for r, c in self.arms
            ],
            "tau": self.tau,
            "m": self.m,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "BanditInstance":
        arms = []
        for i, arm in enumerate(d.get("arms", ())):
            try:
                reward = ArmDistribution.from_dict(arm["reward"])
                cost = ArmDistribution.from_dict(arm["cost"])
            except (KeyError, ValueError) as exc:
                raise ValueError(f"arms[{i}]: {exc}") from None
            arms.append((reward, cost))
        if "tau" not in d or "m" not in d:
            raise ValueError("instance description needs 'tau' and 'm'")
        return cls.create(arms, d["tau"], d["m"])


@dataclass(frozen=True)
class ComplexityProfile:
    """Ground-truth difficulty quantities of an instance.

    `delta_c[a]` is the distance of arm a's mean cost from the threshold
    (plus the `epsilon` tolerance); `delta[a]` is its reward-mean distance
    to the top-m boundary (plus the `delta_tol` tolerance), with every
    infeasible arm assigned the smallest feasible-arm value. `delta_min`
    is the complexity term governing the exponential decay of the
    misidentification bound.
    """

    feasible_set: frozenset[int]
    top_m: frozenset[int]
    ordered_means: tuple[float, ...]
    delta_c: Mapping[int, float]
    delta: Mapping[int, float]
    delta_min: float
    epsilon: float
    delta_tol: float
    # true per-arm moments, kept so monitors need no access to the instance
    means: Mapping[int, float] = field(default_factory=dict)
    costs: Mapping[int, float] = field(default_factory=dict)


def ground_truth(
    instance: BanditInstance, epsilon: float = 0.0, delta_tol: float = 0.0
) -> ComplexityProfile:
    """Derive the ComplexityProfile of `instance` from its exact means.

    With both tolerances zero this requires distinct feasible reward means
    and no cost mean sitting exactly on the threshold; otherwise some gap
    would be zero and every probability bound built from the profile would
    be vacuous. Positive tolerances pad the gaps instead.
    """
    if epsilon < 0.0 or delta_tol < 0.0:
        raise ValueError("tolerances must be nonnegative")
    mu = instance.true_means()
    costs = instance.true_costs()
    tau, m = instance.tau, instance.m

    feasible = frozenset(a for a in instance.arm_ids if costs[a] <= tau)
    if m >= len(feasible):
        raise ValueError("target count not below feasible count")
    if epsilon == 0.0 and any(costs[a] == tau for a in instance.arm_ids):
        raise ValueError(
            "some cost mean equals the threshold; epsilon tolerance required"
        )
    feas_rank = rank(mu, feasible)
    if delta_tol == 0.0:
        vals = sorted(mu[a] for a in feasible)
        if any(x == y for x, y in zip(vals, vals[1:])):
            raise ValueError("degenerate instance requires tolerance")

    ordered_means = tuple(feas_rank.value_at(r) for r in range(1, len(feasible) + 1))
    top_m = frozenset(feas_rank.by_rank[:m])

    delta_c = {a: abs(costs[a] - tau) + epsilon for a in instance.arm_ids}
    delta: dict[int, float] = {}
    mu_m = ordered_means[m - 1]
    mu_m1 = ordered_means[m]
    for a in feasible:
        r = feas_rank.rank_of[a]
        if r <= m:
            delta[a] = ordered_means[r - 1] - mu_m1 + delta_tol
        else:
            delta[a] = mu_m - ordered_means[r - 1] + delta_tol
    fill = min(delta[a] for a in feasible)
    for a in instance.arm_ids:
        if a not in feasible:
            delta[a] = fill

    delta_min = min(min(delta_c[a] / 2.0, delta[a] / 8.0) for a in instance.arm_ids)
    return ComplexityProfile(
        feasible_set=feasible,
        top_m=top_m,
        ordered_means=ordered_means,
        delta_c=delta_c,
        delta=delta,
        delta_min=delta_min,
        epsilon=epsilon,
        delta_tol=delta_tol,
        means=mu,
        costs=costs,
    )


def epsilon_classification(
    instance: BanditInstance, epsilon: float
) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Split arms by the toleranced feasibility rule.

    Returns (eps_feasible, eps_infeasible, marginal): arms with mean cost at
    most tau - epsilon, arms strictly above tau + epsilon, and arms inside
    the band where the tolerance refuses to classify.
    """
    if epsilon < 0.0:
        raise ValueError("tolerances must be nonnegative")
    costs = instance.true_costs()
    tau = instance.tau
    feas = frozenset(a for a in instance.arm_ids if costs[a] <= tau - epsilon)
    infeas = frozenset(a for a in instance.arm_ids if costs[a] > tau + epsilon)
    marginal = frozenset(instance.arm_ids) - feas - infeas
    return feas, infeas, marginal
