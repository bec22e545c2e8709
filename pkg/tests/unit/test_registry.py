"""
Unit tests for CommandRegistry singleton.

Tests verify that:
1. CommandRegistry is a singleton (only one instance exists)
2. Commands can be registered and looked up by name
3. get_all() returns commands in registration order
4. Cannot register duplicate command names
5. register_commands() registers every subcommand once
"""

import pytest

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent / "src"))


def _command(command_name):
    from commands.base import Command

    class MockCommand(Command):
        name = command_name
        help = "mock"

        def run(self, args) -> int:
            return 0

    return MockCommand()


class TestCommandRegistry:
    """Test suite for CommandRegistry singleton."""

    def setup_method(self):
        """Reset registry before each test."""
        from registry import CommandRegistry
        CommandRegistry._instance = None
        CommandRegistry._commands = {}

    def test_singleton_pattern(self):
        """CommandRegistry implements singleton pattern."""
        from registry import CommandRegistry

        registry1 = CommandRegistry()
        registry2 = CommandRegistry()

        assert registry1 is registry2
        assert id(registry1) == id(registry2)

    def test_register_command(self):
        """Can register a command instance."""
        from registry import CommandRegistry

        registry = CommandRegistry()
        registry.register(_command("mock_command"))

        assert "mock_command" in registry._commands
        assert registry.get("mock_command").name == "mock_command"

    def test_register_multiple_commands(self):
        """get_all() keeps registration order."""
        from registry import CommandRegistry

        registry = CommandRegistry()
        registry.register(_command("b"))
        registry.register(_command("a"))

        assert [c.name for c in registry.get_all()] == ["b", "a"]

    def test_register_duplicate_name_raises_error(self):
        """Cannot register two commands with the same name."""
        from registry import CommandRegistry

        registry = CommandRegistry()
        registry.register(_command("duplicate"))

        with pytest.raises(ValueError, match="registered twice"):
            registry.register(_command("duplicate"))

    def test_get_unknown_returns_none(self):
        """get() returns None for unknown names."""
        from registry import CommandRegistry

        assert CommandRegistry().get("nonexistent") is None

    def test_register_commands_idempotent(self):
        """register_commands() registers each subcommand exactly once."""
        from main import register_commands

        first = [c.name for c in register_commands().get_all()]
        second = [c.name for c in register_commands().get_all()]

        assert first == second
        assert set(first) == {"train", "eval", "render", "gradcheck", "sanity", "baseline", "config"}

    def test_command_repr(self):
        """Commands show their class and name."""
        assert repr(_command("train")) == "MockCommand(name='train')"
