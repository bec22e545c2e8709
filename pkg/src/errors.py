"""
Exception hierarchy shared by every gaze-pong package.

Each error also derives from the closest builtin so callers that only know
about ValueError/RuntimeError/IOError keep working.
"""

from typing import Optional


class GazePongError(Exception):
    """Base class for all gaze-pong errors."""


class ConfigError(GazePongError, ValueError):
    """
    Invalid configuration value, unknown key, or unparsable config line.

    Attributes:
        field: Dotted field name the error refers to (e.g. 'agent.gamma')
        line: 1-based line number in the config file, if known
    """

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class UsageError(GazePongError, RuntimeError):
    """An operation was called in a state that does not allow it."""


class ShapeError(GazePongError, ValueError):
    """Tensor shapes do not match what a layer or loss expects."""


class NumericError(GazePongError, FloatingPointError):
    """NaN or Inf showed up in an output, loss or gradient."""


class CheckpointError(GazePongError, IOError):
    """Checkpoint file could not be decoded."""


class BadMagicError(CheckpointError):
    """File does not start with the checkpoint magic bytes."""


class VersionMismatchError(CheckpointError):
    """Checkpoint was written by an unsupported format version."""


class TruncatedCheckpointError(CheckpointError):
    """File ended before all declared records were read."""


class CheckpointShapeError(CheckpointError):
    """Stored tensor shapes do not fit the network architecture."""
