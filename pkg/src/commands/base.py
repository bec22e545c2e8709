"""
Command abstract base class.

Every CLI subcommand inherits from this interface and provides:
- name: Subcommand name as typed on the command line
- help: One-line description for the usage text
- add_arguments(parser): Declare its flags
- run(args) -> int: Execute and return the exit status
"""

import argparse
from abc import ABC, abstractmethod


class Command(ABC):
    """
    Abstract base class for all subcommands.

    Attributes:
        name: Unique subcommand name (e.g., 'train', 'gradcheck')
        help: One-line description shown by --help

    Example:
        class Hello(Command):
            name = "hello"
            help = "print a greeting"

            def add_arguments(self, parser):
                parser.add_argument("--who", default="world")

            def run(self, args) -> int:
                print(f"hello {args.who}")
                return 0
    """

    name: str = None
    help: str = None

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Declare subcommand flags; the default takes none."""

    @abstractmethod
    def run(self, args: argparse.Namespace) -> int:
        """
        Execute the subcommand.

        Args:
            args: Parsed arguments

        Returns:
            Process exit status (0 on success)

        Raises:
            GazePongError, OSError: Reported by main() as a one-line diagnostic
        """
        raise NotImplementedError(f"{self.__class__.__name__}.run() not implemented")

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name='{self.name}')"
