"""Seeded Monte-Carlo harness: sweeps algorithms over horizon grids.

Every (algorithm, horizon) cell runs an independent batch of trials whose
seeds are pure functions of (master_seed, algorithm id, horizon, trial
index), so any cell can be reproduced in isolation and results do not
depend on execution order or thread count. Aggregates carry the matching
closed-form bounds so decay curves and bound overlays come from one CSV.

The CSV schema is every aggregate column except wall_ms, which is
excluded on purpose: emitting a timing would break the byte-identical
replay contract.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Any, Mapping

from .baselines import run_successive_saa, run_uniform_top_m
from .bounds import bound_report
from .engine import RunOutcome, check_zeta, outcome_to_dict, run_csar
from .instance import BanditInstance, ComplexityProfile, ground_truth
from .sampling import MAX_SEED, RandomStream
from .schedule import make_schedule

__all__ = [
    "ALGORITHMS",
    "ALGORITHM_IDS",
    "CSV_COLUMNS",
    "ExperimentConfig",
    "TrialAggregate",
    "TrialRecord",
    "CellResult",
    "derive_trial_seed",
    "load_config",
    "run_cell",
    "run_experiment",
    "emit_csv",
    "read_aggregates",
]

ALGORITHMS = ("csar", "successive_saa", "uniform_top_m")
ALGORITHM_IDS = {"csar": 0, "successive_saa": 1, "uniform_top_m": 2}

_MASK = (1 << 64) - 1


def _mix64(state: int) -> int:
    # one splitmix64 step: add the golden gamma, then finalize
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_trial_seed(
    master_seed: int, algorithm_id: int, horizon: int, trial_index: int
) -> int:
    """Mix the four coordinates of a trial into its 64-bit stream seed.

    Iterated splitmix64: each input is folded in with XOR and pushed
    through one mixing step, so seeds for neighboring trials, horizons,
    or algorithms share no structure. Fixed function of its inputs on
    every platform.
    """
    x = _mix64(master_seed & _MASK)
    x = _mix64(x ^ (algorithm_id & _MASK))
    x = _mix64(x ^ (horizon & _MASK))
    x = _mix64(x ^ (trial_index & _MASK))
    return x


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: an instance, the algorithms, the horizon grid.

    `epsilon` and `delta_tol` pad the ground-truth margins (needed when
    a cost mean sits on the threshold or reward means tie). `csv_path`
    and `traces_dir` are optional outputs; the monitors gate the per-run
    concentration check and the selection-order check.
    """

    instance: BanditInstance
    algorithms: tuple[str, ...]
    horizons: tuple[int, ...]
    trials: int
    master_seed: int
    epsilon: float = 0.0
    delta_tol: float = 0.0
    csv_path: str | None = None
    traces_dir: str | None = None
    zeta_monitor: bool = False
    rank_monitor: bool = False

    SCHEMA_VERSION = 1

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "ExperimentConfig":
        """Parse and validate a config tree; errors carry field paths."""
        known = {
            "schema_version", "instance", "algorithms", "horizons", "trials",
            "master_seed", "tolerance", "outputs", "zeta_monitor", "rank_monitor",
        }
        for key in d:
            if key not in known:
                raise ValueError(f"{key}: unknown field")
        version = d.get("schema_version", cls.SCHEMA_VERSION)
        if version != cls.SCHEMA_VERSION:
            raise ValueError(f"schema_version: unsupported version {version!r}")

        if "instance" not in d:
            raise ValueError("instance: missing")
        try:
            instance = BanditInstance.from_dict(d["instance"])
        except ValueError as exc:
            raise ValueError(f"instance: {exc}") from None

        tol = d.get("tolerance", {})
        if not isinstance(tol, Mapping):
            raise ValueError("tolerance: must be an object")
        epsilon = float(tol.get("epsilon", 0.0))
        delta_tol = float(tol.get("delta_tol", 0.0))
        for name, value in (("epsilon", epsilon), ("delta_tol", delta_tol)):
            if value < 0.0:
                raise ValueError(f"tolerance.{name}: must be nonnegative")
        try:
            ground_truth(instance, epsilon, delta_tol)
        except ValueError as exc:
            raise ValueError(f"instance: {exc}") from None

        algorithms = d.get("algorithms")
        if not algorithms:
            raise ValueError("algorithms: must be a nonempty list")
        for i, algo in enumerate(algorithms):
            if algo not in ALGORITHMS:
                raise ValueError(f"algorithms[{i}]: unknown algorithm {algo!r}")
        if len(set(algorithms)) != len(algorithms):
            raise ValueError("algorithms: duplicate entries")

        horizons = d.get("horizons")
        if not horizons:
            raise ValueError("horizons: must be a nonempty list")
        for i, h in enumerate(horizons):
            if not isinstance(h, int) or isinstance(h, bool):
                raise ValueError(f"horizons[{i}]: must be an integer")
            if h < instance.num_arms:
                raise ValueError(f"horizons[{i}]: budget below arm count")

        trials = d.get("trials")
        if not isinstance(trials, int) or isinstance(trials, bool) or trials < 1:
            raise ValueError("trials: must be a positive integer")

        master_seed = d.get("master_seed")
        if (
            not isinstance(master_seed, int)
            or isinstance(master_seed, bool)
            or not 0 <= master_seed <= MAX_SEED
        ):
            raise ValueError("master_seed: must fit in 64 bits")

        outputs = d.get("outputs", {})
        if not isinstance(outputs, Mapping):
            raise ValueError("outputs: must be an object")
        csv_path = outputs.get("csv")
        traces_dir = outputs.get("traces")
        for name, value in (("csv", csv_path), ("traces", traces_dir)):
            if value is not None and not isinstance(value, str):
                raise ValueError(f"outputs.{name}: must be a path or null")

        monitors = {}
        for name in ("zeta_monitor", "rank_monitor"):
            value = d.get(name, False)
            if not isinstance(value, bool):
                raise ValueError(f"{name}: must be a boolean")
            monitors[name] = value

        return cls(
            instance=instance,
            algorithms=tuple(algorithms),
            horizons=tuple(horizons),
            trials=trials,
            master_seed=master_seed,
            epsilon=epsilon,
            delta_tol=delta_tol,
            csv_path=csv_path,
            traces_dir=traces_dir,
            **monitors,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.SCHEMA_VERSION,
            "instance": self.instance.to_dict(),
            "algorithms": list(self.algorithms),
            "horizons": list(self.horizons),
            "trials": self.trials,
            "master_seed": self.master_seed,
            "tolerance": {"epsilon": self.epsilon, "delta_tol": self.delta_tol},
            "outputs": {"csv": self.csv_path, "traces": self.traces_dir},
            "zeta_monitor": self.zeta_monitor,
            "rank_monitor": self.rank_monitor,
        }


def load_config(path: str) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        tree = json.load(fh)
    if not isinstance(tree, dict):
        raise ValueError("config root must be an object")
    return ExperimentConfig.from_dict(tree)


@dataclass(frozen=True)
class TrialAggregate:
    """Counts and bounds for one (algorithm, horizon) cell.

    `wall_ms` is informational only and never written to CSV. The bound
    columns are the clipped reporting values. Monitors that were off
    report zero counts.
    """

    algorithm: str
    horizon: int
    trials: int
    incorrect_count: int
    fail_count: int
    zeta_violation_count: int
    rank_correct_count: int
    error_rate: float
    theorem1_bound: float
    proof_two_term_bound: float
    mean_total_pulls: float
    wall_ms: float


@dataclass(frozen=True)
class TrialRecord:
    """Per-trial flags kept for monitored cells; None = not evaluated."""

    trial_index: int
    seed: int
    correct: bool
    fail: bool
    zeta_holds: bool | None
    zeta_truncated: bool | None
    rank_correct: bool | None
    total_pulls: int


@dataclass(frozen=True)
class CellResult:
    aggregate: TrialAggregate
    records: tuple[TrialRecord, ...]
    outcomes: tuple[RunOutcome, ...] | None


def _validate_cell(instance: BanditInstance, algorithm: str, horizon: int) -> None:
    if algorithm == "csar":
        make_schedule(instance.num_arms, horizon)
    elif algorithm == "successive_saa":
        if horizon < instance.m * instance.num_arms:
            raise ValueError(
                f"cell ({algorithm}, {horizon}): budget below m*|A| "
                f"= {instance.m * instance.num_arms}"
            )
    elif algorithm == "uniform_top_m":
        if horizon < instance.num_arms:
            raise ValueError(f"cell ({algorithm}, {horizon}): budget below arm count")
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")


def run_cell(
    instance: BanditInstance,
    profile: ComplexityProfile,
    algorithm: str,
    horizon: int,
    trials: int,
    master_seed: int,
    *,
    zeta_monitor: bool = False,
    rank_monitor: bool = False,
    threads: int = 1,
    keep_outcomes: bool = False,
    traces_dir: str | None = None,
) -> CellResult:
    """Run one cell of the sweep and aggregate its counts.

    Trials are independent: trial t always uses the seed derived from
    (master_seed, algorithm id, horizon, t), whether it runs alone, in a
    different cell order, or on a different thread count. Reduction
    happens in trial order over commutative counters.
    """
    _validate_cell(instance, algorithm, horizon)
    algo_id = ALGORITHM_IDS[algorithm]
    schedule = (
        make_schedule(instance.num_arms, horizon) if algorithm == "csar" else None
    )
    check_concentration = zeta_monitor and algorithm == "csar"
    need_phases = check_concentration or keep_outcomes or traces_dir is not None
    keep = keep_outcomes or traces_dir is not None

    def one(t: int) -> tuple[TrialRecord, RunOutcome | None]:
        seed = derive_trial_seed(master_seed, algo_id, horizon, t)
        stream = RandomStream(seed)
        if algorithm == "csar":
            outcome = run_csar(
                instance, schedule, stream, record_phases=need_phases
            )
        elif algorithm == "successive_saa":
            outcome = run_successive_saa(
                instance, horizon, stream, record_phases=need_phases
            )
        else:
            outcome = run_uniform_top_m(
                instance, horizon, stream, record_phases=need_phases
            )
        correct = outcome.is_success and outcome.selected_set == profile.top_m
        zeta_holds = zeta_truncated = None
        if check_concentration:
            report = check_zeta(outcome, profile)
            zeta_holds, zeta_truncated = report.holds, report.truncated
        rank_correct = None
        if rank_monitor and outcome.is_success:
            sel = outcome.selections
            rank_correct = all(
                profile.means[sel[i]] > profile.means[sel[i + 1]]
                for i in range(len(sel) - 1)
            )
        record = TrialRecord(
            trial_index=t,
            seed=seed,
            correct=correct,
            fail=not outcome.is_success,
            zeta_holds=zeta_holds,
            zeta_truncated=zeta_truncated,
            rank_correct=rank_correct,
            total_pulls=outcome.total_pulls,
        )
        return record, (outcome if keep else None)

    start = time.perf_counter()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, range(trials)))
    else:
        results = [one(t) for t in range(trials)]
    wall_ms = (time.perf_counter() - start) * 1e3

    records = tuple(r for r, _ in results)
    outcomes = tuple(o for _, o in results) if keep else None

    if traces_dir is not None:
        os.makedirs(traces_dir, exist_ok=True)
        for record, outcome in zip(records, outcomes):
            payload = {
                "algorithm": algorithm,
                "horizon": horizon,
                "trial_index": record.trial_index,
                "seed": record.seed,
                "outcome": outcome_to_dict(outcome),
            }
            name = f"{algorithm}_h{horizon}_t{record.trial_index:05d}.json"
            with open(os.path.join(traces_dir, name), "w", encoding="utf-8") as fh:
                json.dump(payload, fh, sort_keys=True)

    report = bound_report(profile, instance.num_arms, horizon)
    incorrect = sum(1 for r in records if not r.correct)
    fails = sum(1 for r in records if r.fail)
    aggregate = TrialAggregate(
        algorithm=algorithm,
        horizon=horizon,
        trials=trials,
        incorrect_count=incorrect,
        fail_count=fails,
        zeta_violation_count=sum(1 for r in records if r.zeta_holds is False),
        rank_correct_count=sum(1 for r in records if r.rank_correct),
        error_rate=incorrect / trials,
        theorem1_bound=report.theorem1_bound,
        proof_two_term_bound=report.proof_two_term_bound,
        mean_total_pulls=sum(r.total_pulls for r in records) / trials,
        wall_ms=wall_ms,
    )
    return CellResult(
        aggregate=aggregate,
        records=records,
        outcomes=outcomes if keep_outcomes else None,
    )


def run_experiment(
    config: ExperimentConfig, *, threads: int = 1
) -> list[TrialAggregate]:
    """Run every (algorithm, horizon) cell of the config.

    All cells are validated before any trial runs, so a bad cell aborts
    the experiment instead of emitting partial results. Writes the CSV
    and per-trial traces when the config names paths for them.
    """
    profile = ground_truth(config.instance, config.epsilon, config.delta_tol)
    for algorithm in config.algorithms:
        for horizon in config.horizons:
            _validate_cell(config.instance, algorithm, horizon)

    aggregates: list[TrialAggregate] = []
    for algorithm in config.algorithms:
        for horizon in config.horizons:
            cell = run_cell(
                config.instance,
                profile,
                algorithm,
                horizon,
                config.trials,
                config.master_seed,
                zeta_monitor=config.zeta_monitor,
                rank_monitor=config.rank_monitor,
                threads=threads,
                traces_dir=config.traces_dir,
            )
            aggregates.append(cell.aggregate)

    if config.csv_path is not None:
        emit_csv(aggregates, config.csv_path)
    return aggregates


CSV_COLUMNS = (
    "algorithm",
    "horizon",
    "trials",
    "incorrect_count",
    "fail_count",
    "zeta_violation_count",
    "rank_correct_count",
    "error_rate",
    "theorem1_bound",
    "proof_two_term_bound",
    "mean_total_pulls",
)

_FLOAT_COLUMNS = frozenset(
    {"error_rate", "theorem1_bound", "proof_two_term_bound", "mean_total_pulls"}
)


def emit_csv(aggregates: list[TrialAggregate], path: str) -> None:
    """Write aggregates as a header-first CSV, one row per cell.

    Floats are printed with 17 significant digits so a re-parse
    reproduces them exactly; rows appear in aggregate order. wall_ms is
    not a column (see module docstring).
    """
    if not aggregates:
        raise ValueError("no aggregates to write")
    lines = [",".join(CSV_COLUMNS)]
    for agg in aggregates:
        row = []
        for col in CSV_COLUMNS:
            value = getattr(agg, col)
            row.append(format(value, ".17g") if col in _FLOAT_COLUMNS else str(value))
        lines.append(",".join(row))
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise ValueError(f"cannot write CSV to {path}: {exc}") from None


def read_aggregates(path: str) -> list[TrialAggregate]:
    """Parse a CSV produced by emit_csv back into aggregates (wall_ms = 0)."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        lines = fh.read().splitlines()
    if not lines or tuple(lines[0].split(",")) != CSV_COLUMNS:
        raise ValueError(f"{path} does not start with the aggregate header")
    out = []
    for line in lines[1:]:
        cells = line.split(",")
        values: dict[str, Any] = {}
        for col, cell in zip(CSV_COLUMNS, cells):
            if col == "algorithm":
                values[col] = cell
            elif col in _FLOAT_COLUMNS:
                values[col] = float(cell)
            else:
                values[col] = int(cell)
        out.append(TrialAggregate(wall_ms=0.0, **values))
    return out


def override(config: ExperimentConfig, **changes: Any) -> ExperimentConfig:
    """CLI-style overrides on a parsed config (trials, seed, filters...)."""
    return replace(config, **changes)
