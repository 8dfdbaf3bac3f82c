"""Phase allocation of the sampling budget.

One arm is deactivated per phase, so a run over |A| arms has |A|-1 phases.
The cumulative per-arm pull counts n_k follow the ceiling rule

    n_k = ceil( (H - |A|) / (|A| + 1 - k) * 1 / (h(|A|) - 1/2) )

with h the harmonic number, which keeps the total number of pulls within
the budget H for every H >= |A|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["PhaseSchedule", "harmonic_number", "make_schedule"]


def harmonic_number(k: int) -> float:
    """Sum of 1/i for i = 1..k."""
    if k < 1:
        raise ValueError("harmonic number needs k >= 1")
    return sum(1.0 / i for i in range(1, k + 1))


@dataclass(frozen=True)
class PhaseSchedule:
    """Budget split for a run: cumulative pulls n_k, increments N_k, phase ends t_k."""

    horizon: int
    num_arms: int
    n: tuple[int, ...]
    increments: tuple[int, ...]
    phase_ends: tuple[int, ...]
    harmonic: float

    @property
    def num_phases(self) -> int:
        return self.num_arms - 1

    @property
    def total_pulls(self) -> int:
        """Pulls consumed by a full-length run; at most `horizon`."""
        return self.phase_ends[-1]


def make_schedule(num_arms: int, horizon: int) -> PhaseSchedule:
    """Compute the ceiling-rule schedule for `num_arms` arms and budget `horizon`.

    For tiny budgets the leading increments can be zero; the run logic
    treats those phases as sampling-free rather than failing here.
    """
    if num_arms < 2:
        raise ValueError("schedule needs at least 2 arms")
    if horizon < num_arms:
        raise ValueError("budget below arm count")
    h = harmonic_number(num_arms)
    scale = 1.0 / (h - 0.5)
    n = [
        math.ceil((horizon - num_arms) / (num_arms + 1 - k) * scale)
        for k in range(1, num_arms)
    ]
    increments = [n[0]] + [n[k] - n[k - 1] for k in range(1, len(n))]
    phase_ends = []
    total = 0
    for k, inc in enumerate(increments, start=1):
        total += (num_arms - k + 1) * inc
        phase_ends.append(total)
    return PhaseSchedule(
        horizon=horizon,
        num_arms=num_arms,
        n=tuple(n),
        increments=tuple(increments),
        phase_ends=tuple(phase_ends),
        harmonic=h,
    )
