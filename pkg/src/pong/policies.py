"""
Scripted agent-side policies that bracket what a learned agent should score.

- TrackerPolicy: hand-coded paddle that follows the ball
- RandomPolicy: uniformly random paddle commands

Both bracket the range a learned agent should land in: the tracker wins
comfortably against the default opponent, the random policy loses almost
every point.
"""

from typing import Optional

import numpy as np

from pong.env import EnvConfig, EnvState, GameAction, PongEnv, advance_ball_free


class TrackerPolicy:
    """
    Move the paddle toward the ball's y every decision.

    While the ball is coming toward the agent, "the ball's y" is the height at
    which it will reach the paddle line, found by running the environment's
    own wall physics forward. Otherwise it is the ball's current height.
    The paddle holds still when it is within half a decision's travel of the
    target.
    """

    name = "tracker"

    def target_y(self, state: EnvState) -> float:
        """Vertical center the paddle should move toward."""
        cfg = state.config
        if state.serve_pending:
            return cfg.field_height / 2

        x, y = state.ball_pos
        vx, vy = state.ball_vel
        face = cfg.agent_face_x
        if vx > 0:
            while x + cfg.ball_size <= face:
                x, y, vx, vy = advance_ball_free(cfg, x, y, vx, vy)
        return y + cfg.ball_size / 2

    def __call__(self, state: EnvState) -> GameAction:
        cfg = state.config
        diff = self.target_y(state) - (state.agent_paddle_y + cfg.paddle_height / 2)
        deadzone = cfg.paddle_speed * cfg.action_repeat / 2
        if abs(diff) <= deadzone:
            return GameAction.NOOP
        return GameAction.UP if diff < 0 else GameAction.DOWN


class RandomPolicy:
    """Uniform choice among the three game actions from a seeded generator."""

    name = "random"

    def __init__(self, seed: int = 0):
        self._rng = np.random.default_rng(seed)

    def __call__(self, state: EnvState) -> GameAction:
        return GameAction(int(self._rng.integers(len(GameAction))))


def play_episode(policy, config: Optional[EnvConfig] = None, seed: int = 0) -> int:
    """
    Play one full episode with a scripted policy.

    Args:
        policy: Callable mapping EnvState to GameAction
        config: Environment configuration (defaults if None)
        seed: Environment seed

    Returns:
        Final agent_score - opponent_score
    """
    env = PongEnv(config)
    env.reset(seed)
    result = None
    while not env.done:
        result = env.step(policy(env.state))
    return result.agent_score - result.opponent_score


def mean_score(policy_factory, episodes: int = 20, seed: int = 0,
               config: Optional[EnvConfig] = None) -> float:
    """
    Average final score over seeded episodes.

    Args:
        policy_factory: Called with the episode seed, returns a policy
        episodes: Number of episodes (seeds seed .. seed+episodes-1)
        seed: First environment seed
        config: Environment configuration

    Returns:
        Mean of the per-episode scores
    """
    scores = [
        play_episode(policy_factory(seed + i), config, seed + i)
        for i in range(episodes)
    ]
    return float(np.mean(scores))
