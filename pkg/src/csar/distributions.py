"""Arm outcome distributions.

Every distribution is supported on [0, 1] and exposes its exact mean in
closed form, so ground-truth quantities (feasible set, gaps) never need to
be estimated. Sampling goes through a caller-supplied numpy Generator;
batched draws consume the generator exactly like repeated single draws, a
property the deterministic-replay machinery relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

__all__ = ["ArmDistribution"]

_KINDS = ("point_mass", "bernoulli", "uniform", "beta")


@dataclass(frozen=True)
class ArmDistribution:
    """A reward or cost law on [0, 1] with a closed-form mean.

    Use the classmethod constructors (`point_mass`, `bernoulli`, `uniform`,
    `beta`) rather than instantiating directly.
    """

    kind: str
    params: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown distribution kind {self.kind!r}")
        p = self.params
        if self.kind == "point_mass":
            (v,) = p
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"point_mass value {v} outside [0, 1]")
        elif self.kind == "bernoulli":
            (q,) = p
            if not 0.0 <= q <= 1.0:
                raise ValueError(f"bernoulli probability {q} outside [0, 1]")
        elif self.kind == "uniform":
            lo, hi = p
            if not 0.0 <= lo <= hi <= 1.0:
                raise ValueError(f"uniform bounds ({lo}, {hi}) must satisfy 0 <= lo <= hi <= 1")
        else:
            a, b = p
            if not (a > 0.0 and b > 0.0):
                raise ValueError(f"beta shape parameters ({a}, {b}) must be positive")

    @classmethod
    def point_mass(cls, value: float) -> "ArmDistribution":
        return cls("point_mass", (float(value),))

    @classmethod
    def bernoulli(cls, p: float) -> "ArmDistribution":
        return cls("bernoulli", (float(p),))

    @classmethod
    def uniform(cls, lo: float, hi: float) -> "ArmDistribution":
        return cls("uniform", (float(lo), float(hi)))

    @classmethod
    def beta(cls, alpha: float, beta_param: float) -> "ArmDistribution":
        return cls("beta", (float(alpha), float(beta_param)))

    @property
    def mean(self) -> float:
        """Exact mean of the law."""
        p = self.params
        if self.kind == "point_mass":
            return p[0]
        if self.kind == "bernoulli":
            return p[0]
        if self.kind == "uniform":
            return (p[0] + p[1]) / 2.0
        return p[0] / (p[0] + p[1])

    def sample(self, gen: np.random.Generator, size: int) -> np.ndarray:
        """Draw `size` independent values as a float64 array.

        point_mass consumes no generator state; the stochastic kinds consume
        it identically whether drawn in one batch or one value at a time.
        """
        p = self.params
        if self.kind == "point_mass":
            return np.full(size, p[0])
        if self.kind == "bernoulli":
            return (gen.random(size) < p[0]).astype(np.float64)
        if self.kind == "uniform":
            return p[0] + (p[1] - p[0]) * gen.random(size)
        return gen.beta(p[0], p[1], size)

    def to_dict(self) -> dict[str, Any]:
        p = self.params
        if self.kind == "point_mass":
            return {"kind": "point_mass", "value": p[0]}
        if self.kind == "bernoulli":
            return {"kind": "bernoulli", "p": p[0]}
        if self.kind == "uniform":
            return {"kind": "uniform", "lo": p[0], "hi": p[1]}
        return {"kind": "beta", "alpha": p[0], "beta": p[1]}

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "ArmDistribution":
        try:
            kind = d["kind"]
        except KeyError:
            raise ValueError("distribution description lacks 'kind'") from None
        try:
            if kind == "point_mass":
                return cls.point_mass(d["value"])
            if kind == "bernoulli":
                return cls.bernoulli(d["p"])
            if kind == "uniform":
                return cls.uniform(d["lo"], d["hi"])
            if kind == "beta":
                return cls.beta(d["alpha"], d["beta"])
        except KeyError as exc:
            raise ValueError(f"distribution kind {kind!r} lacks parameter {exc}") from None
        raise ValueError(f"unknown distribution kind {kind!r}")
