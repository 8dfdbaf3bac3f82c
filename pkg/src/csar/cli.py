"""Command-line front end for the Monte-Carlo harness.

Loads a JSON experiment config, applies flag overrides, runs the sweep,
and prints one summary line per cell. Overrides are spliced into the
config tree before validation so every error is reported with its field
path, whether it came from the file or a flag.
"""

from __future__ import annotations

import argparse
import json
import sys

from .harness import ALGORITHMS, ExperimentConfig, run_experiment


def _parse_args(argv: list[str] | None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="csar",
        description=(
            "Run a seeded horizon sweep of constrained top-m arm selection "
            "and write per-cell error rates with their analytic bounds."
        ),
    )
    parser.add_argument("--config", required=True, help="experiment config JSON")
    parser.add_argument("--out", help="override the CSV output path")
    parser.add_argument("--trials", type=int, help="override trials per cell")
    parser.add_argument("--seed", type=int, help="override the master seed")
    parser.add_argument(
        "--algo",
        help=f"comma-separated filter over the config's algorithms {ALGORITHMS}",
    )
    parser.add_argument(
        "--horizons", help="comma-separated horizon list overriding the config"
    )
    parser.add_argument("--traces", help="directory for per-trial trace JSON files")
    parser.add_argument(
        "--threads", type=int, default=1, help="parallel trials per cell (default 1)"
    )
    return parser.parse_args(argv)


def _apply_overrides(tree: dict, args: argparse.Namespace) -> dict:
    if args.trials is not None:
        tree["trials"] = args.trials
    if args.seed is not None:
        tree["master_seed"] = args.seed
    if args.horizons is not None:
        try:
            tree["horizons"] = [int(h) for h in args.horizons.split(",") if h]
        except ValueError:
            raise ValueError("--horizons must be a comma-separated integer list")
    if args.algo is not None:
        requested = [a for a in args.algo.split(",") if a]
        configured = tree.get("algorithms", [])
        missing = [a for a in requested if a not in configured]
        if missing:
            raise ValueError(
                f"--algo names not in the config's algorithms: {missing}"
            )
        tree["algorithms"] = [a for a in configured if a in requested]
    outputs = dict(tree.get("outputs") or {})
    if args.out is not None:
        outputs["csv"] = args.out
    if args.traces is not None:
        outputs["traces"] = args.traces
    if outputs:
        tree["outputs"] = outputs
    return tree


def main(argv: list[str] | None = None) -> int:
    args = _parse_args(argv)
    if args.threads is not None and args.threads < 1:
        print("csar: --threads must be at least 1", file=sys.stderr)
        return 2
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            tree = json.load(fh)
        if not isinstance(tree, dict):
            raise ValueError("config root must be an object")
        tree = _apply_overrides(tree, args)
        config = ExperimentConfig.from_dict(tree)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"csar: config error: {exc}", file=sys.stderr)
        return 2

    try:
        aggregates = run_experiment(config, threads=args.threads)
    except ValueError as exc:
        print(f"csar: {exc}", file=sys.stderr)
        return 2

    for agg in aggregates:
        print(
            f"{agg.algorithm} H={agg.horizon}: "
            f"error_rate={agg.error_rate:.6g} "
            f"fails={agg.fail_count}/{agg.trials} "
            f"bound_thm={agg.theorem1_bound:.3g} "
            f"bound_two_term={agg.proof_two_term_bound:.3g} "
            f"mean_pulls={agg.mean_total_pulls:.1f}"
        )
    if config.csv_path is not None:
        print(f"wrote {config.csv_path}")
    if config.traces_dir is not None:
        print(f"traces in {config.traces_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
