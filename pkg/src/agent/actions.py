"""
Combined action space: 3 game actions x 3 gaze choices = 9 flat actions.

flat_index = 3 * game + mask_index, where mask_index points into the run's
mask family (family_masks order).
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from errors import NumericError
from pong.env import GameAction

NUM_GAME_ACTIONS = 3
NUM_MASK_ACTIONS = 3
NUM_ACTIONS = NUM_GAME_ACTIONS * NUM_MASK_ACTIONS


class CombineMode(Enum):
    """How the two heads become one decision and one TD target."""

    FLATTEN_SUM = "flatten_sum"
    INDEPENDENT_BRANCH = "independent_branch"


@dataclass(frozen=True, eq=False)
class QOutput:
    """Game-head and mask-head Q-values for one observation."""

    q_game: np.ndarray
    q_mask: np.ndarray

    def __post_init__(self):
        if self.q_game.shape != (NUM_GAME_ACTIONS,) or self.q_mask.shape != (NUM_MASK_ACTIONS,):
            raise ValueError(
                f"QOutput needs two 3-vectors, got {self.q_game.shape} and {self.q_mask.shape}"
            )
        if not (np.all(np.isfinite(self.q_game)) and np.all(np.isfinite(self.q_mask))):
            raise NumericError("non-finite Q-values")


@dataclass(frozen=True)
class CombinedAction:
    game: GameAction
    mask_index: int

    def __post_init__(self):
        if not 0 <= self.mask_index < NUM_MASK_ACTIONS:
            raise ValueError(f"mask_index must be in 0..2, got {self.mask_index}")

    @property
    def flat_index(self) -> int:
        return NUM_MASK_ACTIONS * int(self.game) + self.mask_index


def encode_action(game: GameAction, mask_index: int) -> CombinedAction:
    return CombinedAction(GameAction(game), int(mask_index))


def decode_action(flat_index: int) -> CombinedAction:
    if not 0 <= flat_index < NUM_ACTIONS:
        raise ValueError(f"flat action index must be in 0..8, got {flat_index}")
    game, mask_index = divmod(int(flat_index), NUM_MASK_ACTIONS)
    return CombinedAction(GameAction(game), mask_index)


def combined_q(out: QOutput) -> np.ndarray:
    """9 values with q9[3g + m] = q_game[g] + q_mask[m]."""
    return (out.q_game[:, None] + out.q_mask[None, :]).reshape(NUM_ACTIONS)


def select_action(out: QOutput, epsilon: float, rng: np.random.Generator,
                  mode: CombineMode = CombineMode.FLATTEN_SUM) -> CombinedAction:
    """
    Epsilon-greedy over the 9 combined actions.

    Exploration is uniform over all 9 actions. Greedy ties go to the lowest
    index. One uniform draw is consumed per call even when epsilon is 0, so
    the random stream does not depend on epsilon.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")

    if rng.random() < epsilon:
        return decode_action(int(rng.integers(NUM_ACTIONS)))
    if mode is CombineMode.FLATTEN_SUM:
        return decode_action(int(np.argmax(combined_q(out))))
    return encode_action(GameAction(int(np.argmax(out.q_game))), int(np.argmax(out.q_mask)))
