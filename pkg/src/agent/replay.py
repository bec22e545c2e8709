"""
Replay memory.
"""

from dataclasses import dataclass
from typing import List

import numpy as np

from agent.actions import CombinedAction
from errors import UsageError
from observe.stack import ObsStack


@dataclass(frozen=True, eq=False)
class Transition:
    """
    One decision.

    next_obs holds the frame captured under the mask chosen in action
    (after the phase override).
    """

    obs: ObsStack
    action: CombinedAction
    reward: int
    next_obs: ObsStack
    done: bool


class ReplayBuffer:
    """Bounded FIFO of transitions with uniform sampling with replacement."""

    def __init__(self, capacity: int = 100000):
        if capacity < 1:
            raise ValueError(f"replay capacity must be positive, got {capacity}")
        self.capacity = capacity
        self._storage: List[Transition] = []
        self._next = 0

    def __len__(self) -> int:
        return len(self._storage)

    def store(self, transition: Transition):
        """Append, evicting the oldest transition once full."""
        if len(self._storage) < self.capacity:
            self._storage.append(transition)
        else:
            self._storage[self._next] = transition
        self._next = (self._next + 1) % self.capacity

    def sample(self, batch_size: int, rng: np.random.Generator) -> List[Transition]:
        """
        Raises:
            UsageError: If fewer than batch_size transitions are stored
        """
        if batch_size < 1 or len(self._storage) < batch_size:
            raise UsageError(
                f"cannot sample {batch_size} transitions from a buffer holding {len(self._storage)}"
            )
        indices = rng.integers(len(self._storage), size=batch_size)
        return [self._storage[i] for i in indices]

    def items(self) -> List[Transition]:
        """Stored transitions, oldest first."""
        if len(self._storage) < self.capacity:
            return list(self._storage)
        return self._storage[self._next:] + self._storage[:self._next]

    def clear(self):
        self._storage.clear()
        self._next = 0
