#!/usr/bin/env python3
"""
gaze-pong - Main entry point.

Command-line front end for the partially observable Pong testbed: train,
evaluate and render agents that choose both a paddle move and which third
of the screen to look at.
"""

import argparse
import sys
from pathlib import Path

# Add src directory to path when run as a script
sys.path.insert(0, str(Path(__file__).parent))

from commands.evaluate import EvalCommand, RenderCommand
from commands.sanity import BaselineCommand, GradCheckCommand, SanityCommand
from commands.train import ConfigCommand, TrainCommand
from errors import GazePongError, UsageError
from registry import CommandRegistry


def register_commands() -> CommandRegistry:
    """Register all subcommands with CommandRegistry (once per process)."""
    registry = CommandRegistry()
    for command in (
        TrainCommand(),
        EvalCommand(),
        RenderCommand(),
        GradCheckCommand(),
        SanityCommand(),
        BaselineCommand(),
        ConfigCommand(),
    ):
        if registry.get(command.name) is None:
            registry.register(command)
    return registry


def build_parser(registry: CommandRegistry) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaze-pong",
        description="Partially observable Pong: a DQN that picks a paddle move and where to look.",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for command in registry.get_all():
        command.add_arguments(subparsers.add_parser(command.name, help=command.help))
    return parser


def main(argv=None) -> int:
    """
    Parse argv, run the subcommand and return its exit status.

    Usage problems exit with 2, failures with 1 and a one-line diagnostic
    on stderr.
    """
    registry = register_commands()
    parser = build_parser(registry)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    command = registry.get(args.command)
    try:
        return command.run(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (GazePongError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
