"""
Unit tests for the scripted playability policies.

Tests verify that:
1. The tracker holds still when already lined up and moves toward the ball otherwise
2. The tracker wins comfortably against the built-in opponent
3. A random paddle loses almost every point
4. Scripted episodes are reproducible
"""

import dataclasses

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent.parent.parent / "src"))


class TestTrackerPolicy:
    """Test suite for TrackerPolicy decisions."""

    def test_centered_paddle_waits_for_serve(self):
        """With a serve pending the tracker returns to center and stays there."""
        from pong.env import EnvConfig, GameAction, reset
        from pong.policies import TrackerPolicy

        state, _ = reset(EnvConfig(), seed=0)
        state = dataclasses.replace(state, serve_pending=True)

        assert TrackerPolicy()(state) == GameAction.NOOP

    def test_moves_toward_receding_ball(self):
        """A ball moving away is followed by its current height."""
        from pong.env import EnvConfig, GameAction, reset
        from pong.policies import TrackerPolicy

        state, _ = reset(EnvConfig(), seed=0)
        high = dataclasses.replace(state, ball_pos=(80.0, 10.0), ball_vel=(-2.0, 0.0))
        low = dataclasses.replace(state, ball_pos=(80.0, 150.0), ball_vel=(-2.0, 0.0))

        assert TrackerPolicy()(high) == GameAction.UP
        assert TrackerPolicy()(low) == GameAction.DOWN

    def test_predicts_bounce(self):
        """An approaching ball is tracked to where it will cross the paddle line."""
        from pong.env import EnvConfig, reset
        from pong.policies import TrackerPolicy

        cfg = EnvConfig()
        state, _ = reset(cfg, seed=0)
        # Heading down-right from near the bottom: it bounces before arriving.
        state = dataclasses.replace(state, ball_pos=(100.0, 150.0), ball_vel=(2.0, 2.0))

        target = TrackerPolicy().target_y(state)

        assert target < 150.0 + cfg.ball_size / 2
        assert 0 <= target <= cfg.field_height


class TestScoreBrackets:
    """Test suite for the sanity and baseline score brackets."""

    def test_tracker_wins(self):
        """Tracker mean score over 20 episodes is at least +15."""
        from pong.policies import TrackerPolicy, mean_score

        assert mean_score(lambda seed: TrackerPolicy(), episodes=20, seed=0) >= 15

    def test_random_loses(self):
        """Random paddle mean score over 20 episodes is at most -18."""
        from pong.policies import RandomPolicy, mean_score

        assert mean_score(RandomPolicy, episodes=20, seed=0) <= -18

    def test_scripted_episode_reproducible(self):
        """Same policy seed and env seed give the same final score."""
        from pong.env import EnvConfig
        from pong.policies import RandomPolicy, play_episode

        cfg = EnvConfig(points_to_win=3)

        assert play_episode(RandomPolicy(3), cfg, 3) == play_episode(RandomPolicy(3), cfg, 3)
