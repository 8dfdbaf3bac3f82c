"""Time the pure-Python and compiled phase-loop kernels on identical inputs.

Inputs (per-phase cumulative sums) are prepared up front so the timings
cover only the kernels. Outputs are compared element-for-element first;
a speedup is only meaningful if the two backends agree bitwise.

Usage: python benchmarks/bench_backends.py [--trials N] [--horizon H]
"""

import argparse
import time

import numpy as np

from csar.backend import available_backends, get_kernel
from csar.distributions import ArmDistribution
from csar.engine import _boundary_sums
from csar.instance import BanditInstance
from csar.sampling import RandomStream
from csar.schedule import make_schedule

MUS = (0.9, 0.8, 0.7, 0.6, 0.5, 0.4)
COSTS = (0.2, 0.3, 0.7, 0.4, 0.8, 0.3)


def build_inputs(trials: int, horizon: int):
    instance = BanditInstance.create(
        [
            (ArmDistribution.bernoulli(mu), ArmDistribution.bernoulli(c))
            for mu, c in zip(MUS, COSTS)
        ],
        tau=0.5,
        m=2,
    )
    schedule = make_schedule(instance.num_arms, horizon)
    n = np.asarray(schedule.n, dtype=np.int64)
    inputs = []
    for seed in range(trials):
        rewards, costs = RandomStream(seed).tape(instance, int(n[-1]))
        inputs.append((_boundary_sums(rewards, n), _boundary_sums(costs, n)))
    return instance, n, inputs


def run_all(kernel, inputs, n, tau, m):
    outputs = []
    start = time.perf_counter()
    for reward_sums, cost_sums in inputs:
        outputs.append(kernel(reward_sums, cost_sums, n, tau, m))
    return time.perf_counter() - start, outputs


def assert_identical(a, b):
    for out_a, out_b in zip(a, b):
        assert out_a[0] == out_b[0] and out_a[7] == out_b[7]
        for arr_a, arr_b in zip(out_a[1:7], out_b[1:7]):
            assert np.array_equal(np.asarray(arr_a), np.asarray(arr_b))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=2000)
    parser.add_argument("--horizon", type=int, default=3200)
    args = parser.parse_args()

    if "cython" not in available_backends():
        print("compiled kernel not available; nothing to compare")
        return 1

    instance, n, inputs = build_inputs(args.trials, args.horizon)
    tau, m = instance.tau, instance.m

    # warm-up, then two timed passes per kernel, keeping the better one
    py = get_kernel("python")
    cy = get_kernel("cython")
    run_all(py, inputs[:50], n, tau, m)
    run_all(cy, inputs[:50], n, tau, m)
    t_py, out_py = min(
        (run_all(py, inputs, n, tau, m) for _ in range(2)), key=lambda p: p[0]
    )
    t_cy, out_cy = min(
        (run_all(cy, inputs, n, tau, m) for _ in range(2)), key=lambda p: p[0]
    )

    assert_identical(out_py, out_cy)
    print(f"inputs: {args.trials} trials, horizon {args.horizon}, 6 arms")
    print(f"python kernel: {t_py * 1e3:8.1f} ms  ({t_py / args.trials * 1e6:6.1f} us/trial)")
    print(f"cython kernel: {t_cy * 1e3:8.1f} ms  ({t_cy / args.trials * 1e6:6.1f} us/trial)")
    print(f"speedup: {t_py / t_cy:.1f}x, outputs bit-identical")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
