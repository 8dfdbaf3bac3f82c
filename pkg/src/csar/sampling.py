"""Per-trial random sampling with independent per-arm substreams.

A RandomStream owns one trial's randomness. Every (arm, reward/cost) pair
gets its own PCG64 substream keyed by (trial_seed, arm_id, kind), so the
i-th reward of an arm is a fixed function of the trial seed no matter how
often other arms, or the arm's own cost stream, are consumed. Batch draws
(`tape`) and one-at-a-time draws (`draw`) therefore see the same values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instance import BanditInstance

__all__ = ["SampleDraw", "RandomStream"]

_REWARD = 0
_COST = 1

MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class SampleDraw:
    """One pull: an independent (reward, cost) pair and its time index."""

    arm_id: int
    reward: float
    cost: float
    time_index: int


class RandomStream:
    """Stateful source of samples for a single trial.

    Confined to one trial; runs never share a stream. The only mutable
    state is the substream positions and the global pull counter.
    """

    def __init__(self, trial_seed: int):
        if not 0 <= trial_seed <= MAX_SEED:
            raise ValueError("trial seed must fit in 64 bits")
        self.trial_seed = int(trial_seed)
        self._gens: dict[tuple[int, int], np.random.Generator] = {}
        self._time = 0

    def _gen(self, arm_id: int, kind: int) -> np.random.Generator:
        key = (arm_id, kind)
        gen = self._gens.get(key)
        if gen is None:
            seq = np.random.SeedSequence((self.trial_seed, arm_id, kind))
            gen = np.random.Generator(np.random.PCG64(seq))
            self._gens[key] = gen
        return gen

    @property
    def pulls(self) -> int:
        """Number of pulls drawn through `draw` or `pull_block` so far."""
        return self._time

    def draw(self, instance: BanditInstance, arm_id: int) -> SampleDraw:
        """Draw one (reward, cost) pair from an arm.

        Time indices are assigned 1, 2, ... in draw order with no gaps.
        """
        if not 0 <= arm_id < instance.num_arms:
            raise ValueError(f"invalid arm id {arm_id}")
        reward = instance.reward_dist(arm_id).sample(self._gen(arm_id, _REWARD), 1)[0]
        cost = instance.cost_dist(arm_id).sample(self._gen(arm_id, _COST), 1)[0]
        self._time += 1
        return SampleDraw(
            arm_id=arm_id,
            reward=float(reward),
            cost=float(cost),
            time_index=self._time,
        )

    def pull_block(
        self, instance: BanditInstance, arm_id: int, count: int
    ) -> tuple[np.ndarray, np.ndarray]:
        """Draw `count` pulls of one arm at once; equivalent to `count` draws."""
        if not 0 <= arm_id < instance.num_arms:
            raise ValueError(f"invalid arm id {arm_id}")
        rewards = instance.reward_dist(arm_id).sample(self._gen(arm_id, _REWARD), count)
        costs = instance.cost_dist(arm_id).sample(self._gen(arm_id, _COST), count)
        self._time += count
        return rewards, costs

    def tape(
        self, instance: BanditInstance, length: int
    ) -> tuple[np.ndarray, np.ndarray]:
        """Pre-draw `length` pulls of every arm.

        Returns (rewards, costs), each of shape (num_arms, length). Row a is
        the prefix of arm a's sample sequence, so consuming any prefix of a
        row is indistinguishable from lazy drawing. Tape draws do not touch
        the pull counter: the engine accounts for consumed pulls itself.
        """
        num_arms = instance.num_arms
        rewards = np.empty((num_arms, length))
        costs = np.empty((num_arms, length))
        for a in instance.arm_ids:
            rewards[a] = instance.reward_dist(a).sample(self._gen(a, _REWARD), length)
            costs[a] = instance.cost_dist(a).sample(self._gen(a, _COST), length)
        return rewards, costs
