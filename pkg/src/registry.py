"""
Subcommand table shared by main.py and the tests.

main.register_commands() fills it once per process; build_parser() walks it
to add one argparse subparser per command, and main() dispatches on the
chosen name.
"""

from typing import List, Optional


class CommandRegistry:
    """
    Process-wide table of subcommands, keyed by Command.name.

    Every CommandRegistry() call returns the same table, so commands registered
    by register_commands() are visible wherever the registry is constructed.
    Iteration follows registration order, which is the order of `--help`.
    """

    _instance: Optional['CommandRegistry'] = None
    _commands: dict = {}

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._commands = {}
        return cls._instance

    def register(self, command) -> None:
        """
        Raises:
            ValueError: When another command already uses command.name
        """
        if command.name in self._commands:
            raise ValueError(f"subcommand '{command.name}' registered twice")
        self._commands[command.name] = command

    def get(self, name: str):
        """The command registered under name, or None."""
        return self._commands.get(name)

    def get_all(self) -> List:
        return list(self._commands.values())
