"""
Pong package.

Deterministic Pong world with a scripted opponent:
- env: EnvConfig, EnvState, reset/step/render, PongEnv wrapper
- policies: scripted tracker and random paddles
"""

from pong.env import (
    EnvConfig,
    EnvState,
    GameAction,
    PongEnv,
    StepResult,
    opponent_policy,
    render,
    reset,
    step,
    trajectory_digest,
)

__all__ = [
    'EnvConfig', 'EnvState', 'GameAction', 'PongEnv', 'StepResult',
    'opponent_policy', 'render', 'reset', 'step', 'trajectory_digest',
]
