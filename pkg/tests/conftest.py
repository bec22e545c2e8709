import pytest
import sys
from pathlib import Path

import numpy as np

# Add src directory to Python path
src_path = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(src_path))

CONFIGS_DIR = Path(__file__).parent.parent / "configs"


@pytest.fixture
def rng():
    """Seeded generator so property tests are reproducible."""
    return np.random.default_rng(12345)


@pytest.fixture
def small_env_config():
    """Short episodes: first to 3 points, capped at 400 decisions."""
    from pong.env import EnvConfig
    return EnvConfig(points_to_win=3, max_steps=400)


@pytest.fixture
def tiny_agent_config():
    """Small network with learning starting almost immediately."""
    from agent.dqn import AgentConfig
    return AgentConfig(
        architecture="tiny", batch_size=4, learn_start=8, learn_every=2,
        replay_capacity=500, target_sync_every=20, epsilon_decay_steps=200,
    )


@pytest.fixture
def smoke_config():
    """configs/smoke.cfg, parsed."""
    from toolkit.config import load_config
    return load_config(CONFIGS_DIR / "smoke.cfg")
