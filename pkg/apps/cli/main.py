"""
botminer command line.

    botminer extract --dataset synthetic --seed 7 --out results/synthetic
    botminer rank    --config configs/cresci-17.toml --source account
    botminer select  --config configs/cresci-17.toml --method mutual_info --k-max 40
    botminer train   --config configs/cresci-17.toml --models random_forest,dummy_majority
    botminer ablate  --config configs/twibot-20.toml
    botminer report  --out results/cresci-17
    botminer run     --config configs/cresci-15.toml --threads 8

Exit codes: 0 success, 2 configuration error, 3 data error.
"""
import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from core.errors import BotMinerError, ConfigError
from core.schemas.config import (
    MODEL_IDS,
    ExperimentConfig,
    build_experiment_config,
    load_experiment_config,
    preset_manifest,
)
from core.select import RANK_METHODS
from pipelines.experiments import (
    cmd_ablate,
    cmd_extract,
    cmd_rank,
    cmd_report,
    cmd_run,
    cmd_select,
    cmd_train,
)

logger = logging.getLogger("botminer")

COMMANDS = ("extract", "rank", "select", "train", "ablate", "report", "run")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="botminer",
        description="Social bot detection: feature extraction, selection and evaluation",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", type=Path, help="Experiment config (TOML or JSON)")
        p.add_argument("--dataset", help="Built-in dataset preset (cresci-15, cresci-17, twibot-20, synthetic)")
        p.add_argument("--seed", type=int, help="Experiment seed")
        p.add_argument("--method", choices=RANK_METHODS, help="Ranking method")
        p.add_argument("--models", help=f"Comma-separated model ids ({', '.join(MODEL_IDS)})")
        p.add_argument("--k-max", type=int, dest="k_max", help="Largest feature subset tried by selection")
        p.add_argument("--patience", type=int, help="Non-improving steps before selection stops")
        p.add_argument("--folds", type=int, help="Cross-validation folds")
        p.add_argument("--out", type=Path, help="Output directory")
        p.add_argument("--threads", type=int, help="Worker cap (default: BOTMINER_THREADS or 1)")
        p.add_argument("--max-tweets", type=int, dest="max_tweets", help="Most recent tweets kept per account")
        p.add_argument("--source", choices=("account", "content"), help="Also export a top-15 ranking of one source")
        p.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    return parser


def configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else os.getenv("BOTMINER_LOG_LEVEL", "INFO").strip().upper()
    if not isinstance(logging.getLevelName(level), int):
        raise ConfigError(f"BOTMINER_LOG_LEVEL must be a logging level name, got {level!r}")
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    threads = args.threads
    if threads is None and os.getenv("BOTMINER_THREADS"):
        try:
            threads = int(os.environ["BOTMINER_THREADS"])
        except ValueError as e:
            raise ConfigError(f"BOTMINER_THREADS must be an integer: {e}") from e
    models: Optional[List[str]] = None
    if args.models:
        models = [m.strip() for m in args.models.split(",") if m.strip()]
    overrides: Dict[str, Any] = {
        "seed": args.seed,
        "selection.method": args.method,
        "selection.k_max": args.k_max,
        "selection.patience": args.patience,
        "cv.folds": args.folds,
        "models": models,
        "output_dir": str(args.out) if args.out is not None else None,
        "threads": threads,
        "manifest.max_tweets_per_user": args.max_tweets,
    }
    if args.command == "ablate" and args.method:
        overrides["ablation_methods"] = [args.method]
    return overrides


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    """Config file (or dataset preset) plus flag overrides."""
    overrides = _overrides(args)
    if args.config is not None:
        config = load_experiment_config(args.config, overrides)
        if args.dataset and args.dataset != config.manifest.dataset_id:
            raise ConfigError(
                f"--dataset {args.dataset} contradicts the config's dataset {config.manifest.dataset_id}"
            )
        return config
    if not args.dataset:
        raise ConfigError("Either --config or --dataset is required")
    if args.seed is None:
        raise ConfigError("--seed is required without a config file")
    manifest = preset_manifest(args.dataset)
    if manifest.format != "synthetic":
        raise ConfigError(
            f"--dataset {args.dataset} has no data paths; use --config with a manifest that lists them"
        )
    data = {
        "manifest": manifest.model_dump(mode="json"),
        "output_dir": str(Path("results") / args.dataset),
    }
    return build_experiment_config(data, overrides)


def dispatch(args: argparse.Namespace) -> None:
    if args.command == "report" and args.config is None:
        if args.out is None:
            raise ConfigError("report needs --out or --config")
        report = cmd_report(args.out)
        print(f"report: {len(report.evaluations)} models, {len(report.rankings)} rankings")
        return

    config = resolve_config(args)
    logger.info("[%s] %s (seed %d) -> %s", config.manifest.dataset_id, args.command, config.seed, config.output_dir)

    if args.command == "extract":
        table = cmd_extract(config)
        print(f"extracted {table.n_rows} accounts x {len(table.names)} features")
    elif args.command == "rank":
        methods = [args.method] if args.method else None
        for ranking in cmd_rank(config, methods, args.source):
            print(f"{ranking.method}: {', '.join(ranking.top(10))}")
    elif args.command == "select":
        selection = cmd_select(config)
        best = max(p.mean_accuracy for p in selection.accuracy_curve)
        print(f"chosen k={selection.chosen_k} accuracy={best:.4f}: {', '.join(selection.chosen_features)}")
    elif args.command == "train":
        for report in cmd_train(config):
            print(f"{report.model_id:<20} accuracy={report.accuracy.mean:.4f} auc={report.auc.mean:.4f} "
                  f"recall={report.recall.mean:.4f} precision={report.precision.mean:.4f} f1={report.f1.mean:.4f}")
    elif args.command == "ablate":
        for row in cmd_ablate(config).rows:
            cells = [
                "unavailable" if v is None else f"{v:.4f}"
                for v in (row.account, row.content, row.combined)
            ]
            print(f"{row.method:<14} account={cells[0]} content={cells[1]} combined={cells[2]}")
    elif args.command == "report":
        report = cmd_report(config.output_dir)
        print(f"report: {len(report.evaluations)} models, {len(report.rankings)} rankings")
    elif args.command == "run":
        report = cmd_run(config, source=args.source)
        print(f"run complete: {config.output_dir}")
        if report.evaluations:
            top = report.evaluations[0]
            print(f"best model {top.model_id} accuracy={top.accuracy.mean:.4f}")


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    try:
        configure_logging(args.verbose)
    except ConfigError as e:
        print(f"ConfigError: {e}", file=sys.stderr)
        return e.exit_code
    try:
        dispatch(args)
    except ValidationError as e:
        logger.error("Invalid configuration: %s", e)
        return 2
    except BotMinerError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return e.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
