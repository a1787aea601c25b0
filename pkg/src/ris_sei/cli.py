"""Command-line interface.

Exit codes: 0 success, 1 usage errors, 2 data/processing errors. The seed
for stochastic commands resolves in order: --seed flag, the scenario
document's seed key, the RIS_SEI_SEED environment variable. validate and
experiment fall back to a built-in default so they run out of the box.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from pathlib import Path

from . import experiments, validation
from .analytic import (
    analytic_roc,
    derive_stats,
    operating_point,
    optimal_threshold,
    threshold_for_target_pf,
)
from .detector import decide, delta_t, rss
from .errors import MalformedDocumentError, MissingKeyError, RisSeiError
from .model import Hypothesis, VarianceMode, parse_scenario
from .montecarlo import empirical_roc
from .optimizer import sweep_size
from .reporting import roc_to_csv, stats_to_csv, sweep_to_csv, write_text
from .traceio import read_trace, write_trace

ENV_SEED = "RIS_SEI_SEED"


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; this CLI reserves 2 for data."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _env_seed() -> int | None:
    raw = os.environ.get(ENV_SEED)
    if raw is None:
        return None
    try:
        return int(raw, 10)
    except ValueError:
        raise MalformedDocumentError(f"{ENV_SEED} must be an integer, got {raw!r}") from None


def _resolve_seed(cli_seed, scenario_seed=None, default=None) -> int | None:
    for value in (cli_seed, scenario_seed, _env_seed(), default):
        if value is not None:
            return value
    return None


def _load_scenario(path, cli_seed):
    scenario = parse_scenario(Path(path).read_text())
    seed = _resolve_seed(cli_seed, scenario.seed)
    if seed != scenario.seed:
        scenario = dataclasses.replace(scenario, seed=seed)
    return scenario


def _emit(text: str, out) -> None:
    if out:
        write_text(out, text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _mode(name: str) -> VarianceMode:
    return VarianceMode(name)


def _stats_for(args, scenario):
    return derive_stats(
        scenario, _mode(args.mode), calibration_trials=getattr(args, "calibration_trials", 100_000)
    )


def _cmd_simulate(args) -> int:
    scenario = _load_scenario(args.scenario, args.seed)
    scenario.require_seed()
    hypothesis = Hypothesis.LEGITIMATE if args.hypothesis == "h0" else Hypothesis.SPOOFING
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    from .channel import simulate_block

    for i in range(args.start, args.start + args.blocks):
        for k in range(scenario.n_subcarriers):
            block = simulate_block(scenario, hypothesis, block_index=i, subcarrier=k)
            path = out_dir / f"block{i:06d}_sc{k:02d}.iqt"
            write_trace(path, block.samples, args.sample_rate)
            sys.stdout.write(f"{path}\n")
    return 0


def _cmd_stats(args) -> int:
    scenario = _load_scenario(args.scenario, args.seed)
    _emit(stats_to_csv(_stats_for(args, scenario)), args.out)
    return 0


def _cmd_roc(args) -> int:
    scenario = _load_scenario(args.scenario, args.seed)
    stats = _stats_for(args, scenario)
    curves = []
    if args.source in ("analytic", "both"):
        curves.append(analytic_roc(stats, n_points=args.points))
    if args.source in ("empirical", "both"):
        thresholds = analytic_roc(stats, n_points=args.points).thresholds
        curves.append(empirical_roc(scenario, thresholds, args.trials))
    _emit(roc_to_csv(*curves), args.out)
    return 0


def _threshold_value(args, scenario) -> float:
    stats = _stats_for(args, scenario)
    if args.optimal:
        return optimal_threshold(stats)
    return threshold_for_target_pf(args.target_pf, stats)


def _cmd_threshold(args) -> int:
    scenario = _load_scenario(args.scenario, args.seed)
    sys.stdout.write(f"{_threshold_value(args, scenario)!r}\n")
    return 0


def _cmd_detect(args) -> int:
    reference = rss(read_trace(args.reference))
    observed = rss(read_trace(args.observed))
    statistic = delta_t(reference, observed)
    if args.threshold is not None:
        threshold = args.threshold
    else:
        if not args.scenario:
            raise MissingKeyError("scenario")
        threshold = _threshold_value(args, _load_scenario(args.scenario, args.seed))
    decision = decide(statistic, threshold)
    sys.stdout.write(f"delta = {statistic.delta!r}\n")
    sys.stdout.write(f"threshold = {threshold!r}\n")
    sys.stdout.write(f"decision = {decision.value}\n")
    return 0


def _cmd_validate(args) -> int:
    seed = _resolve_seed(args.seed, default=validation.DEFAULT_SEED)
    report = validation.build_validation_report(
        seed=seed,
        lemma_draws=args.lemma_draws,
        means_trials=args.means_trials,
        adjudication_trials=args.adjudication_trials,
        roc_trials=args.roc_trials,
    )
    _emit(report, args.out)
    return 0


def _cmd_experiment(args) -> int:
    seed = _resolve_seed(args.seed, default=experiments.DEFAULT_SEED)
    report = experiments.run_experiment_suite(args.name, seed=seed, n_trials=args.trials)
    _emit(report, args.out)
    return 0


def _cmd_sweep(args) -> int:
    scenario = _load_scenario(args.scenario, args.seed)
    try:
        grid = [int(n) for n in args.n_elements.split(",") if n.strip()]
    except ValueError:
        raise MalformedDocumentError(
            f"--n-elements must be comma-separated integers, got {args.n_elements!r}"
        ) from None
    result = sweep_size(
        scenario.channel,
        scenario.samples_per_block,
        grid,
        args.target_pf,
        mode=_mode(args.mode),
        seed=scenario.seed,
        calibration_trials=args.calibration_trials,
    )
    _emit(sweep_to_csv(result), args.out)
    return 0


def _add_mode(parser, default="closed_form"):
    parser.add_argument(
        "--mode",
        choices=[m.value for m in VarianceMode],
        default=default,
        help="variance mode for analytic statistics",
    )
    parser.add_argument(
        "--calibration-trials",
        type=int,
        default=100_000,
        help="Monte-Carlo trials when --mode calibrated",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ris-sei", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="write simulated I/Q trace files")
    p.add_argument("--scenario", required=True)
    p.add_argument("--hypothesis", choices=["h0", "h1"], required=True)
    p.add_argument("--blocks", type=int, default=1)
    p.add_argument("--start", type=int, default=0, help="first block index")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--sample-rate", type=int, default=1_000_000)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("stats", help="emit the Gaussian statistics CSV")
    p.add_argument("--scenario", required=True)
    _add_mode(p)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("roc", help="emit a ROC CSV")
    p.add_argument("--scenario", required=True)
    p.add_argument("--source", choices=["analytic", "empirical", "both"], default="analytic")
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--trials", type=int, default=50_000)
    _add_mode(p)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_roc)

    p = sub.add_parser("threshold", help="print a detection threshold")
    p.add_argument("--scenario", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--target-pf", type=float)
    group.add_argument("--optimal", action="store_true")
    _add_mode(p)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("detect", help="compare two traces against a threshold")
    p.add_argument("--reference", required=True)
    p.add_argument("--observed", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--threshold", type=float)
    group.add_argument("--target-pf", type=float)
    group.add_argument("--optimal", action="store_true")
    p.add_argument("--scenario", help="required with --target-pf/--optimal")
    _add_mode(p)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("validate", help="run the oracle-vs-analytics report")
    p.add_argument("--seed", type=int)
    p.add_argument("--lemma-draws", type=int, default=100_000)
    p.add_argument("--means-trials", type=int, default=30_000)
    p.add_argument("--adjudication-trials", type=int, default=80_000)
    p.add_argument("--roc-trials", type=int, default=20_000)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("experiment", help="run a canned detection experiment")
    p.add_argument("--name", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int, default=experiments.DEFAULT_TRIALS)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("sweep", help="detection vs element count CSV")
    p.add_argument("--scenario", required=True)
    p.add_argument("--n-elements", required=True, help="comma-separated element counts")
    p.add_argument("--target-pf", type=float, required=True)
    _add_mode(p)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RisSeiError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
