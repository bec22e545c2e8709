"""
Verification subcommands: gradcheck, sanity, baseline.
"""

import argparse
import sys

from commands.base import Command
from neuralnet.gradcheck import TOLERANCE, grad_check_suite
from pong.policies import RandomPolicy, TrackerPolicy, mean_score

SANITY_MIN_SCORE = 15.0
BASELINE_MAX_SCORE = -18.0


class GradCheckCommand(Command):
    """Finite-difference check of every layer kind."""

    name = "gradcheck"
    help = "verify analytic gradients against finite differences"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--seeds", type=int, default=10, help="random instances per chain")

    def run(self, args: argparse.Namespace) -> int:
        results = grad_check_suite(args.seeds)
        for name, error in results.items():
            print(f"{name:<16} {error:.3e}")
        worst = max(results.values())
        print(f"max relative error: {worst:.3e}")
        if worst > TOLERANCE:
            print(f"error: gradient check above tolerance {TOLERANCE:.0e}", file=sys.stderr)
            return 1
        return 0


class SanityCommand(Command):
    """Scripted tracker paddle against the built-in opponent."""

    name = "sanity"
    help = "play the scripted tracker policy and print its mean score"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--episodes", type=int, default=20)
        parser.add_argument("--seed", type=int, default=0, help="first environment seed")

    def run(self, args: argparse.Namespace) -> int:
        score = mean_score(lambda seed: TrackerPolicy(), args.episodes, args.seed)
        print(f"mean score: {score:.2f}")
        if score < SANITY_MIN_SCORE:
            print(f"error: tracker mean score below {SANITY_MIN_SCORE:+.0f}", file=sys.stderr)
            return 1
        return 0


class BaselineCommand(Command):
    """Uniformly random paddle."""

    name = "baseline"
    help = "play a random policy and print its mean score"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--episodes", type=int, default=20)
        parser.add_argument("--seed", type=int, default=0, help="first environment seed")

    def run(self, args: argparse.Namespace) -> int:
        score = mean_score(RandomPolicy, args.episodes, args.seed)
        print(f"mean score: {score:.2f}")
        if score > BASELINE_MAX_SCORE:
            print(f"error: random mean score above {BASELINE_MAX_SCORE:+.0f}", file=sys.stderr)
            return 1
        return 0
