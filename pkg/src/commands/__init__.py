"""
Commands package.

One Command subclass per CLI subcommand:
- base: Command abstract base class
- train: train, config
- evaluate: eval, render
- sanity: gradcheck, sanity, baseline
"""

from commands.base import Command

__all__ = ['Command']
