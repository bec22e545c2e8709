"""
train and config subcommands.
"""

import argparse
from pathlib import Path

from commands.base import Command
from toolkit.config import RunConfig, dump_config, load_config
from trainer.loop import run_training


class TrainCommand(Command):
    """Train an agent from a run-config file."""

    name = "train"
    help = "train an agent from a config file"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--config", required=True, help="run-config file")
        parser.add_argument("--seed", type=int, default=None, help="override train.seed")
        parser.add_argument("--out", default=None, help="output directory (default: runs/<config name>)")
        parser.add_argument("--resume", default=None, help="checkpoint to continue from")

    def run(self, args: argparse.Namespace) -> int:
        config = load_config(args.config)
        if args.seed is not None:
            config = config.with_seed(args.seed).validate()
        out_dir = Path(args.out) if args.out else Path("runs") / Path(args.config).stem

        result = run_training(
            config.env, config.agent, config.curriculum, config.train,
            out_dir=out_dir, resume_from=args.resume,
        )
        last = result.metrics[-1] if result.metrics else None
        if last is not None:
            print(f"episodes: {last.episode}  final phase: {result.phase.value}  "
                  f"last reward: {last.episode_reward}")
        if result.evaluations:
            print(f"last eval mean score: {result.evaluations[-1].mean_score:.2f}")
        print(f"outputs: {out_dir}")
        return 0


class ConfigCommand(Command):
    """Print the canonical form of a config, defaults filled in."""

    name = "config"
    help = "show the canonical run config"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--show", action="store_true", required=True, help="print the config")
        parser.add_argument("--config", default=None, help="config file (default: built-in defaults)")

    def run(self, args: argparse.Namespace) -> int:
        config = load_config(args.config) if args.config else RunConfig().validate()
        print(dump_config(config), end="")
        return 0
