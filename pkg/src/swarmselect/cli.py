"""Command line entry point.

    swarmselect [run] --dataset d.csv --algo hhossa --seed 7 --output out/
    swarmselect gen-synthetic --output d.csv --samples 200 --informative 5 --noise 15

``run`` is the default subcommand.  Settings resolve as defaults, then the
``--config`` file, then explicit flags.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .config import ConfigError, ExperimentConfig, apply, load_config_file
from .dataset import DatasetError, load_csv
from .experiment import StageError, run_on_dataset, write_outputs
from .synthetic import make_synthetic, write_csv

log = logging.getLogger("swarmselect")

SUBCOMMANDS = ("run", "gen-synthetic")


def _run_parser(sub) -> None:
    p = sub.add_parser("run", help="run feature selection on a CSV dataset")
    # every default is None so that only explicit flags override the config file
    p.add_argument("--dataset", help="CSV file with a header row")
    p.add_argument("--label-column", help="label column name or index (default: last)")
    p.add_argument("--algo", action="append",
                   help="hho, ssa, hhossa or all; repeatable or comma-separated")
    p.add_argument("--seed", type=int, help="unsigned 64-bit seed (default 0)")
    p.add_argument("--iterations", type=int, help="HHO / outer iterations (default 100)")
    p.add_argument("--ssa-iterations", type=int, help="SSA iterations (default 20)")
    p.add_argument("--population", type=int, help="hawks and salps (default 30)")
    p.add_argument("--k", type=int, help="KNN neighbours (default 5)")
    p.add_argument("--train-fraction", type=float, help="outer train share (default 0.8)")
    p.add_argument("--positive-class", type=int, help="class id treated as positive (default 1)")
    p.add_argument("--output", help="directory for JSON/CSV results")
    p.add_argument("--repeat", type=int, help="run this many consecutive seeds")
    p.add_argument("--config", help="JSON file of settings (dotted keys or flag names)")


def _gen_parser(sub) -> None:
    p = sub.add_parser("gen-synthetic", help="write a synthetic benchmark CSV")
    p.add_argument("--output", required=True, help="CSV path to write")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--informative", type=int, default=5)
    p.add_argument("--noise", type=int, default=15)
    p.add_argument("--separation", type=float, default=4.0,
                   help="distance between class centres on informative columns")
    p.add_argument("--spread", type=float, default=0.5,
                   help="standard deviation of informative-column noise")
    p.add_argument("--layout", choices=("blocks", "shifted"), default="blocks")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swarmselect", description="Swarm-based wrapper feature selection."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command")
    _run_parser(sub)
    _gen_parser(sub)
    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    cfg = ExperimentConfig()
    if args.config:
        cfg = apply(cfg, load_config_file(args.config))
    flags = {
        "dataset": args.dataset,
        "label_column": args.label_column,
        "algo": ",".join(args.algo) if args.algo else None,
        "seed": args.seed,
        "iterations": args.iterations,
        "ssa_iterations": args.ssa_iterations,
        "population": args.population,
        "k": args.k,
        "train_fraction": args.train_fraction,
        "positive_class": args.positive_class,
        "output": args.output,
        "repeat": args.repeat,
    }
    cfg = apply(cfg, {k: v for k, v in flags.items() if v is not None})
    if not cfg.dataset:
        raise ConfigError("no dataset given (--dataset or 'dataset' in --config)")
    return cfg.validate()


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        cfg = resolve_config(args)
    except ConfigError as exc:
        raise StageError("config", str(exc)) from exc
    try:
        ds = load_csv(cfg.dataset, cfg.label_column)
    except DatasetError as exc:
        raise StageError("load", str(exc)) from exc
    log.info("loaded %s: %d samples x %d features, classes %s",
             cfg.dataset, ds.n_samples, ds.n_features, ds.class_names)
    results = run_on_dataset(ds, cfg)
    for r in results:
        acc = "n/a" if r.test_metrics is None else f"{100 * r.test_metrics.accuracy:.2f}%"
        print(f"{r.algo:7s} seed={r.seed} fitness={r.best_fitness:.6f} "
              f"selected={r.n_selected}/{ds.n_features} accuracy={acc} "
              f"time={r.wall_time_seconds:.3f}s")
    if cfg.output:
        try:
            written = write_outputs(results, Path(cfg.output))
        except OSError as exc:
            raise StageError("write", str(exc)) from exc
        log.info("wrote %d files to %s", len(written), cfg.output)
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    try:
        ds, informative = make_synthetic(
            args.samples, args.informative, args.noise, args.separation, args.seed,
            args.spread, args.layout,
        )
        write_csv(ds, args.output)
    except (ValueError, OSError) as exc:
        raise StageError("gen-synthetic", str(exc)) from exc
    print(f"wrote {args.output}: {ds.n_samples} samples, informative columns {informative}")
    return 0


def _with_default_command(argv: list[str]) -> list[str]:
    flags = [a for a in argv if a in ("-v", "--verbose")]
    rest = [a for a in argv if a not in ("-v", "--verbose")]
    if rest and rest[0] not in SUBCOMMANDS and rest[0] not in ("-h", "--help", "--version"):
        rest.insert(0, "run")
    return flags + rest


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = _with_default_command(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.command is None:
        parser.print_help()
        return 2
    try:
        if args.command == "gen-synthetic":
            return _cmd_gen(args)
        return _cmd_run(args)
    except StageError as exc:
        print(f"swarmselect: error in stage {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
