"""
DQN learning machinery: epsilon schedule, TD targets, the learning step and
the DQNAgent that ties them to a replay buffer and a target network.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from agent.actions import CombinedAction, CombineMode, select_action
from agent.qnetwork import ARCHITECTURES, STANDARD, Architecture, init_params, q_backward, q_batch, q_forward
from agent.replay import ReplayBuffer, Transition
from errors import ConfigError, NumericError
from neuralnet.losses import huber_loss
from neuralnet.network import NetParams, copy_params
from neuralnet.optim import AdamState, adam_step
from observe.stack import ObsStack


@dataclass(frozen=True)
class AgentConfig:
    """
    DQN hyperparameters. Defaults follow the canonical DQN setup.

    Attributes:
        gamma: Discount factor
        epsilon_start: Exploration rate at step 0
        epsilon_end: Exploration rate after the decay
        epsilon_decay_steps: Agent steps over which epsilon decays linearly
        learning_rate: Adam step size
        batch_size: Transitions per learning step
        target_sync_every: Agent steps between target network syncs
        learn_start: Buffer size before learning begins
        learn_every: Agent steps between learning steps
        replay_capacity: Maximum stored transitions
        huber_delta: Huber loss threshold
        combine_mode: flatten_sum or independent_branch
        architecture: Q-network layout name (standard or tiny)
    """

    gamma: float = 0.99
    epsilon_start: float = 1.0
    epsilon_end: float = 0.05
    epsilon_decay_steps: int = 100000
    learning_rate: float = 1e-4
    batch_size: int = 32
    target_sync_every: int = 1000
    learn_start: int = 5000
    learn_every: int = 4
    replay_capacity: int = 100000
    huber_delta: float = 1.0
    combine_mode: CombineMode = CombineMode.FLATTEN_SUM
    architecture: str = STANDARD.name

    def validate(self) -> "AgentConfig":
        """
        Raises:
            ConfigError: Naming the first offending field
        """
        if not 0.0 <= self.gamma <= 1.0:
            raise ConfigError(f"gamma must be in [0, 1], got {self.gamma}", field="agent.gamma")
        for name in ("epsilon_start", "epsilon_end"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {value}", field=f"agent.{name}")
        for name in ("epsilon_decay_steps", "batch_size", "target_sync_every", "learn_start",
                     "learn_every", "replay_capacity"):
            value = getattr(self, name)
            if value < 1:
                raise ConfigError(f"{name} must be positive, got {value}", field=f"agent.{name}")
        for name in ("learning_rate", "huber_delta"):
            value = getattr(self, name)
            if not value > 0.0:
                raise ConfigError(f"{name} must be positive, got {value}", field=f"agent.{name}")
        if self.replay_capacity < self.batch_size:
            raise ConfigError(
                f"replay_capacity ({self.replay_capacity}) is smaller than batch_size ({self.batch_size})",
                field="agent.replay_capacity",
            )
        if not isinstance(self.combine_mode, CombineMode):
            raise ConfigError(f"unknown combine mode {self.combine_mode!r}", field="agent.combine_mode")
        if self.architecture not in ARCHITECTURES:
            raise ConfigError(
                f"unknown architecture '{self.architecture}' (known: {', '.join(ARCHITECTURES)})",
                field="agent.architecture",
            )
        return self

    @property
    def network(self) -> Architecture:
        return ARCHITECTURES[self.architecture]


def epsilon_at(config: AgentConfig, step: int) -> float:
    """Linear decay from epsilon_start to epsilon_end, then constant."""
    fraction = min(max(step, 0) / config.epsilon_decay_steps, 1.0)
    return config.epsilon_start + fraction * (config.epsilon_end - config.epsilon_start)


def sync_target(params: NetParams) -> NetParams:
    """Frozen copy of the online parameters."""
    return copy_params(params)


def _stack_batch(stacks: List[ObsStack]) -> np.ndarray:
    return np.stack([stack.as_array() for stack in stacks])


def td_targets(batch: List[Transition], target_params: NetParams, gamma: float,
               mode: CombineMode, architecture: Architecture = STANDARD) -> np.ndarray:
    """
    Bootstrap targets from the target network.

    Returns:
        FLATTEN_SUM: shape (B,), r + (1 - done) * gamma * (max q_game' + max q_mask')
        INDEPENDENT_BRANCH: shape (B, 2), per-branch targets (game, mask)
    """
    rewards = np.array([t.reward for t in batch], dtype=np.float32)
    alive = np.array([0.0 if t.done else 1.0 for t in batch], dtype=np.float32)
    q_game, q_mask, _ = q_batch(target_params, architecture, _stack_batch([t.next_obs for t in batch]))
    best_game = q_game.max(axis=1)
    best_mask = q_mask.max(axis=1)
    discount = np.float32(gamma) * alive
    if mode is CombineMode.FLATTEN_SUM:
        return rewards + discount * (best_game + best_mask)
    return np.stack([rewards + discount * best_game, rewards + discount * best_mask], axis=1)


def learn_step(params: NetParams, target_params: NetParams, buffer: ReplayBuffer,
               optimizer: AdamState, config: AgentConfig,
               rng: np.random.Generator) -> Tuple[NetParams, AdamState, float]:
    """
    Sample a batch, regress the taken actions' Q-values onto their TD targets
    with Huber loss and apply one Adam step.

    Returns:
        (new params, new optimizer state, loss)

    Raises:
        UsageError: If the buffer holds fewer than batch_size transitions
        NumericError: If the loss is not finite
    """
    architecture = config.network
    batch = buffer.sample(config.batch_size, rng)
    targets = td_targets(batch, target_params, config.gamma, config.combine_mode, architecture)

    q_game, q_mask, cache = q_batch(params, architecture, _stack_batch([t.obs for t in batch]))
    rows = np.arange(len(batch))
    games = np.array([int(t.action.game) for t in batch])
    masks = np.array([t.action.mask_index for t in batch])
    grad_game = np.zeros_like(q_game)
    grad_mask = np.zeros_like(q_mask)

    if config.combine_mode is CombineMode.FLATTEN_SUM:
        predicted = q_game[rows, games] + q_mask[rows, masks]
        loss, grad = huber_loss(predicted, targets, config.huber_delta)
        grad_game[rows, games] = grad
        grad_mask[rows, masks] = grad
    else:
        loss_game, grad_g = huber_loss(q_game[rows, games], targets[:, 0], config.huber_delta)
        loss_mask, grad_m = huber_loss(q_mask[rows, masks], targets[:, 1], config.huber_delta)
        loss = 0.5 * (loss_game + loss_mask)
        grad_game[rows, games] = 0.5 * grad_g
        grad_mask[rows, masks] = 0.5 * grad_m

    if not np.isfinite(loss):
        raise NumericError(f"non-finite loss {loss}")

    grads = q_backward(params, architecture, cache, grad_game, grad_mask)
    new_params, new_optimizer = adam_step(params, grads, optimizer, config.learning_rate)
    return new_params, new_optimizer, float(loss)


class DQNAgent:
    """
    Online/target networks, optimizer, replay memory and step counter.

    The agent's random stream is reseeded from (seed, episode) at the start
    of each episode, so a resumed run draws the same numbers as an
    uninterrupted one.

    Usage:
        agent = DQNAgent(AgentConfig(), seed=0)
        agent.begin_episode(1)
        action = agent.act(obs)
        loss = agent.observe(Transition(obs, action, reward, next_obs, done))
    """

    def __init__(self, config: AgentConfig, seed: int = 0):
        self.config = config.validate()
        self.architecture = config.network
        self.seed = seed
        self.params = init_params(self.architecture, seed)
        self.target_params = sync_target(self.params)
        self.optimizer = AdamState.zeros_like(self.params)
        self.buffer = ReplayBuffer(config.replay_capacity)
        self.total_steps = 0
        self._rng = np.random.default_rng([seed, 0])

    def begin_episode(self, episode: int):
        self._rng = np.random.default_rng([self.seed, episode])

    @property
    def epsilon(self) -> float:
        return epsilon_at(self.config, self.total_steps)

    def act(self, obs: ObsStack, epsilon: Optional[float] = None) -> CombinedAction:
        """Epsilon-greedy decision; uses the scheduled epsilon unless one is given."""
        out = q_forward(self.params, obs, self.architecture)
        eps = self.epsilon if epsilon is None else epsilon
        return select_action(out, eps, self._rng, self.config.combine_mode)

    def observe(self, transition: Transition) -> Optional[float]:
        """
        Store a transition, then learn and sync on schedule.

        Returns:
            The learning step's loss, or None if no step ran
        """
        self.buffer.store(transition)
        self.total_steps += 1
        loss = None
        warm = len(self.buffer) >= max(self.config.learn_start, self.config.batch_size)
        if warm and self.total_steps % self.config.learn_every == 0:
            self.params, self.optimizer, loss = learn_step(
                self.params, self.target_params, self.buffer, self.optimizer, self.config, self._rng
            )
        if self.total_steps % self.config.target_sync_every == 0:
            self.target_params = sync_target(self.params)
        return loss

    def snapshot(self) -> NetParams:
        """Read-only copy of the online parameters for concurrent evaluation."""
        params = copy_params(self.params)
        for value in params.values():
            value.setflags(write=False)
        return params

    def restore(self, params: NetParams, target_params: NetParams, optimizer: AdamState,
                total_steps: int):
        """Adopt checkpointed state. The replay buffer starts empty."""
        self.params = params
        self.target_params = target_params
        self.optimizer = optimizer
        self.total_steps = total_steps
        self.buffer.clear()
