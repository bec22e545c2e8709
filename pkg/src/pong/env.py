"""
Deterministic Pong simulation.

The agent controls the right paddle and a scripted opponent controls the left
one. Every point is worth +1 (agent scored) or -1 (opponent scored) and an
episode ends when either side reaches points_to_win or max_steps decisions
have been taken.

Coordinates are screen coordinates: x grows to the right, y grows downward.
Ball and paddle positions are the top-left corners of their rectangles.

The core API is functional (reset/step/render/opponent_policy operate on
immutable EnvState values); PongEnv wraps it for loops that prefer an object.
"""

import hashlib
import math
import struct
from dataclasses import dataclass, field, fields, replace
from enum import IntEnum
from typing import Any, Iterable, Optional

import numpy as np

from errors import ConfigError, UsageError


class GameAction(IntEnum):
    """Paddle command for one agent decision."""

    NOOP = 0
    UP = 1
    DOWN = 2


@dataclass(frozen=True)
class EnvConfig:
    """Field geometry, speeds and episode limits."""

    field_width: int = 160
    field_height: int = 168
    paddle_height: int = 16
    paddle_width: int = 4
    paddle_margin: int = 16
    ball_size: int = 4
    paddle_speed: float = 4.0
    ball_speed_x: float = 2.0
    ball_speed_y_max: float = 4.0
    opponent_speed: float = 2.0
    opponent_deadzone: float = 4.0
    points_to_win: int = 21
    action_repeat: int = 4
    max_steps: int = 10000

    def validate(self) -> "EnvConfig":
        """
        Check ranges and cross-field constraints.

        Returns:
            self, so calls can be chained

        Raises:
            ConfigError: naming the first offending field
        """
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name in ("opponent_deadzone",):
                if value < 0:
                    raise ConfigError(f"{f.name} must be >= 0, got {value}", field=f"env.{f.name}")
            elif value <= 0:
                raise ConfigError(f"{f.name} must be > 0, got {value}", field=f"env.{f.name}")

        if self.opponent_speed >= self.ball_speed_y_max:
            raise ConfigError(
                "opponent_speed must be smaller than ball_speed_y_max "
                f"({self.opponent_speed} >= {self.ball_speed_y_max})",
                field="env.opponent_speed",
            )
        if self.paddle_height > self.field_height:
            raise ConfigError("paddle_height exceeds field_height", field="env.paddle_height")
        if self.ball_size >= self.field_height or self.ball_size >= self.field_width:
            raise ConfigError("ball_size must be smaller than the field", field="env.ball_size")
        if 2 * (self.paddle_margin + self.paddle_width) + self.ball_size >= self.field_width:
            raise ConfigError("paddles leave no room for play", field="env.paddle_margin")
        return self

    @property
    def agent_face_x(self) -> float:
        """x of the agent paddle's inner (left) face."""
        return self.field_width - self.paddle_margin - self.paddle_width

    @property
    def opponent_face_x(self) -> float:
        """x of the opponent paddle's inner (right) face."""
        return self.paddle_margin + self.paddle_width

    @property
    def paddle_y_max(self) -> float:
        return self.field_height - self.paddle_height


@dataclass(frozen=True)
class EnvState:
    """Complete world state; the single source of game truth."""

    config: EnvConfig
    ball_pos: tuple
    ball_vel: tuple
    agent_paddle_y: float
    opponent_paddle_y: float
    agent_score: int = 0
    opponent_score: int = 0
    step_count: int = 0
    rng_state: dict = field(default_factory=dict, repr=False)
    serve_pending: bool = False
    serve_direction: int = 1

    @property
    def done(self) -> bool:
        cfg = self.config
        return (
            self.agent_score >= cfg.points_to_win
            or self.opponent_score >= cfg.points_to_win
            or self.step_count >= cfg.max_steps
        )


@dataclass(frozen=True)
class StepResult:
    """What one agent decision produced."""

    frame: np.ndarray
    reward: int
    done: bool
    agent_score: int
    opponent_score: int


def _rng_from(state: dict) -> np.random.Generator:
    bit_generator = np.random.PCG64()
    bit_generator.state = state
    return np.random.Generator(bit_generator)


def _draw_serve_vy(config: EnvConfig, rng: np.random.Generator) -> float:
    # Serves are gentle: 1 or 2 px/tick, sign from the generator.
    magnitude = float(min(int(rng.integers(1, 3)), config.ball_speed_y_max))
    sign = 1.0 if int(rng.integers(2)) else -1.0
    return sign * magnitude


def _clamp(value: float, low: float, high: float) -> float:
    return low if value < low else high if value > high else value


def _deflection(config: EnvConfig, ball_y: float, paddle_y: float) -> float:
    """Outgoing vy from where the ball met the paddle."""
    offset = (ball_y + config.ball_size / 2) - (paddle_y + config.paddle_height / 2)
    vy = config.ball_speed_y_max * offset / (config.paddle_height / 2)
    return _clamp(vy, -config.ball_speed_y_max, config.ball_speed_y_max)


def _overlaps(config: EnvConfig, ball_y: float, paddle_y: float) -> bool:
    return ball_y + config.ball_size > paddle_y and ball_y < paddle_y + config.paddle_height


def advance_ball_free(config: EnvConfig, x: float, y: float, vx: float, vy: float) -> tuple:
    """
    Move the ball one tick, reflecting off the top and bottom walls only.

    Returns:
        (x, y, vx, vy) after the tick
    """
    x += vx
    y += vy
    y_max = config.field_height - config.ball_size
    if y < 0:
        y = -y
        vy = -vy
    elif y > y_max:
        y = 2 * y_max - y
        vy = -vy
    return x, y, vx, vy


def _track(target_center: float, paddle_y: float, height: float,
           speed: float, deadzone: float) -> float:
    diff = target_center - (paddle_y + height / 2)
    if abs(diff) <= deadzone:
        return 0.0
    return math.copysign(min(speed, abs(diff)), diff)


def opponent_policy(state: EnvState) -> float:
    """
    Displacement of the opponent paddle for one tick.

    Chases the ball's vertical center at no more than opponent_speed and holds
    still while the ball is within opponent_deadzone of the paddle center.
    """
    cfg = state.config
    return _track(
        state.ball_pos[1] + cfg.ball_size / 2,
        state.opponent_paddle_y,
        cfg.paddle_height,
        cfg.opponent_speed,
        cfg.opponent_deadzone,
    )


class _World:
    """Mutable working copy of an EnvState used while simulating ticks."""

    def __init__(self, state: EnvState):
        self.state = state
        self.config = state.config
        self.x, self.y = state.ball_pos
        self.vx, self.vy = state.ball_vel
        self.agent_y = state.agent_paddle_y
        self.opponent_y = state.opponent_paddle_y
        self.agent_score = state.agent_score
        self.opponent_score = state.opponent_score
        self.rng_state = state.rng_state
        self.serve_pending = state.serve_pending
        self.serve_direction = state.serve_direction

    def _serve(self) -> None:
        cfg = self.config
        rng = _rng_from(self.rng_state)
        self.x = (cfg.field_width - cfg.ball_size) / 2
        self.y = (cfg.field_height - cfg.ball_size) / 2
        self.vx = self.serve_direction * cfg.ball_speed_x
        self.vy = _draw_serve_vy(cfg, rng)
        self.rng_state = rng.bit_generator.state
        self.serve_pending = False

    def tick(self, action: GameAction) -> int:
        """
        Advance one internal tick.

        Returns:
            +1 if the agent scored, -1 if the opponent scored, 0 otherwise
        """
        cfg = self.config
        if self.serve_pending:
            self._serve()

        if action == GameAction.UP:
            self.agent_y -= cfg.paddle_speed
        elif action == GameAction.DOWN:
            self.agent_y += cfg.paddle_speed
        self.agent_y = _clamp(self.agent_y, 0, cfg.paddle_y_max)

        move = _track(self.y + cfg.ball_size / 2, self.opponent_y, cfg.paddle_height,
                      cfg.opponent_speed, cfg.opponent_deadzone)
        self.opponent_y = _clamp(self.opponent_y + move, 0, cfg.paddle_y_max)

        prev_x = self.x
        self.x, self.y, self.vx, self.vy = advance_ball_free(cfg, self.x, self.y, self.vx, self.vy)

        agent_face = cfg.agent_face_x
        if self.vx > 0 and prev_x + cfg.ball_size <= agent_face < self.x + cfg.ball_size:
            if _overlaps(cfg, self.y, self.agent_y):
                self.x = agent_face - cfg.ball_size
                self.vx = -abs(self.vx)
                self.vy = _deflection(cfg, self.y, self.agent_y)

        opponent_face = cfg.opponent_face_x
        if self.vx < 0 and self.x < opponent_face <= prev_x:
            if _overlaps(cfg, self.y, self.opponent_y):
                self.x = opponent_face
                self.vx = abs(self.vx)
                self.vy = _deflection(cfg, self.y, self.opponent_y)

        if self.x < 0:
            self.agent_score += 1
            self.serve_pending = True
            self.serve_direction = -1
            return 1
        if self.x + cfg.ball_size > cfg.field_width:
            self.opponent_score += 1
            self.serve_pending = True
            self.serve_direction = 1
            return -1
        return 0

    def freeze(self, step_count: int) -> EnvState:
        return replace(
            self.state,
            ball_pos=(self.x, self.y),
            ball_vel=(self.vx, self.vy),
            agent_paddle_y=self.agent_y,
            opponent_paddle_y=self.opponent_y,
            agent_score=self.agent_score,
            opponent_score=self.opponent_score,
            step_count=step_count,
            rng_state=self.rng_state,
            serve_pending=self.serve_pending,
            serve_direction=self.serve_direction,
        )


def render(state: EnvState) -> np.ndarray:
    """
    Draw the state as a (field_height, field_width) float32 frame.

    Background is 0.0; paddles and ball are 1.0. The ball is not drawn while a
    serve is pending (it has left the field). No score overlay.
    """
    cfg = state.config
    frame = np.zeros((cfg.field_height, cfg.field_width), dtype=np.float32)

    def fill(x: float, y: float, width: int, height: int) -> None:
        top = int(math.floor(y))
        left = int(math.floor(x))
        frame[max(top, 0):max(top + height, 0), max(left, 0):max(left + width, 0)] = 1.0

    fill(cfg.opponent_face_x - cfg.paddle_width, state.opponent_paddle_y,
         cfg.paddle_width, cfg.paddle_height)
    fill(cfg.agent_face_x, state.agent_paddle_y, cfg.paddle_width, cfg.paddle_height)
    if not state.serve_pending:
        fill(state.ball_pos[0], state.ball_pos[1], cfg.ball_size, cfg.ball_size)
    return frame


def reset(config: EnvConfig, seed: int) -> tuple:
    """
    Start a new episode.

    Args:
        config: Environment configuration (validated here)
        seed: Seed for the serve generator

    Returns:
        (EnvState, raw frame) for the opening position

    Raises:
        ConfigError: If config is invalid
    """
    config.validate()
    rng = np.random.Generator(np.random.PCG64(seed))
    direction = 1 if int(rng.integers(2)) else -1
    vy = _draw_serve_vy(config, rng)
    paddle_y = (config.field_height - config.paddle_height) / 2
    state = EnvState(
        config=config,
        ball_pos=((config.field_width - config.ball_size) / 2,
                  (config.field_height - config.ball_size) / 2),
        ball_vel=(direction * config.ball_speed_x, vy),
        agent_paddle_y=paddle_y,
        opponent_paddle_y=paddle_y,
        rng_state=rng.bit_generator.state,
        serve_direction=direction,
    )
    return state, render(state)


def step(state: EnvState, action) -> tuple:
    """
    Apply one agent decision for action_repeat ticks.

    The decision ends early at the first point event, so at most one point is
    scored per step.

    Returns:
        (next EnvState, StepResult)

    Raises:
        UsageError: If state is already terminal
    """
    if state.done:
        raise UsageError("cannot step a finished episode; call reset() first")
    action = GameAction(int(action))

    world = _World(state)
    reward = 0
    for _ in range(state.config.action_repeat):
        reward = world.tick(action)
        if reward:
            break

    next_state = world.freeze(state.step_count + 1)
    result = StepResult(
        frame=render(next_state),
        reward=reward,
        done=next_state.done,
        agent_score=next_state.agent_score,
        opponent_score=next_state.opponent_score,
    )
    return next_state, result


class PongEnv:
    """
    Stateful wrapper around reset/step for training and evaluation loops.

    Usage:
        env = PongEnv(EnvConfig())
        frame = env.reset(seed=7)
        result = env.step(GameAction.UP)
    """

    def __init__(self, config: Optional[EnvConfig] = None):
        self.config = (config or EnvConfig()).validate()
        self._state: Optional[EnvState] = None

    @property
    def state(self) -> EnvState:
        if self._state is None:
            raise UsageError("environment has not been reset")
        return self._state

    @property
    def done(self) -> bool:
        return self.state.done

    def reset(self, seed: int) -> np.ndarray:
        self._state, frame = reset(self.config, seed)
        return frame

    def step(self, action: Any) -> StepResult:
        self._state, result = step(self.state, action)
        return result


def trajectory_digest(config: EnvConfig, seed: int, actions: Iterable) -> str:
    """
    SHA-256 over the frames, rewards and scores of a rollout.

    The rollout stops early if the episode ends before the actions run out.
    """
    state, frame = reset(config, seed)
    digest = hashlib.sha256(frame.tobytes())
    for action in actions:
        if state.done:
            break
        state, result = step(state, action)
        digest.update(result.frame.tobytes())
        digest.update(struct.pack("<iii", result.reward, result.agent_score, result.opponent_score))
    return digest.hexdigest()
