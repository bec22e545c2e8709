"""
eval and render subcommands: everything that starts from a checkpoint.
"""

import argparse
import dataclasses
from pathlib import Path

from commands.base import Command
from errors import UsageError
from pong.env import EnvConfig
from toolkit.checkpoint import load_checkpoint
from toolkit.config import load_config
from toolkit.frames import render_sequence
from toolkit.metrics import write_histogram
from trainer.config import TrainConfig
from trainer.evaluate import evaluate


def _env_config(args: argparse.Namespace) -> EnvConfig:
    """Environment settings from --config, or the defaults."""
    return load_config(args.config).env if args.config else EnvConfig()


class EvalCommand(Command):
    """Evaluate a checkpoint and write its mask histogram."""

    name = "eval"
    help = "evaluate a checkpoint (prints mean score, writes histogram CSV)"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--checkpoint", required=True, help="checkpoint file")
        parser.add_argument("--config", default=None, help="run-config whose env settings to play with")
        parser.add_argument("--episodes", type=int, default=10, help="evaluation episodes")
        parser.add_argument("--seed", type=int, default=0, help="first environment seed")
        parser.add_argument("--epsilon", type=float, default=0.05, help="evaluation exploration rate")
        parser.add_argument("--workers", type=int, default=1, help="parallel evaluation threads")
        parser.add_argument("--out", default=None, help="histogram directory (default: next to the checkpoint)")

    def run(self, args: argparse.Namespace) -> int:
        env_config = _env_config(args)
        blob = load_checkpoint(args.checkpoint)
        train_config = dataclasses.replace(
            TrainConfig(), mask_family=blob.family, eval_episodes=args.episodes,
            eval_epsilon=args.epsilon, eval_workers=args.workers, seed=args.seed,
        ).validate()
        result = evaluate(blob.online, env_config, train_config, args.seed, phase=blob.phase)

        checkpoint = Path(args.checkpoint)
        out_dir = Path(args.out) if args.out else checkpoint.parent
        path = out_dir / f"{checkpoint.stem}_histogram.csv"
        write_histogram(path, result.histogram)
        print(f"mean score: {result.mean_score:.2f}")
        print(f"scores: {' '.join(str(s) for s in result.scores)}")
        print(f"histogram: {path}")
        return 0


class RenderCommand(Command):
    """Replay a greedy episode and write every stride-th observed frame as PGM."""

    name = "render"
    help = "render a greedy episode from a checkpoint as PGM frames"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--checkpoint", required=True, help="checkpoint file")
        parser.add_argument("--config", default=None, help="run-config whose env settings to play with")
        parser.add_argument("--stride", type=int, default=4, help="keep every Nth decision")
        parser.add_argument("--seed", type=int, default=0, help="environment seed")
        parser.add_argument("--window", type=int, default=None,
                            help="only frames within W decisions before each agent point")
        parser.add_argument("--out", default=None, help="output directory (default: frames/ next to the checkpoint)")

    def run(self, args: argparse.Namespace) -> int:
        if args.stride < 1 or (args.window is not None and args.window < 1):
            raise UsageError("--stride and --window must be positive")
        env_config = _env_config(args)
        out_dir = Path(args.out) if args.out else Path(args.checkpoint).parent / "frames"
        paths = render_sequence(args.checkpoint, args.seed, out_dir, stride=args.stride,
                                window=args.window, env_config=env_config)
        print(f"wrote {len(paths)} frames to {out_dir}")
        return 0
