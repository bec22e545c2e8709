"""
Four-frame observation history.

Each frame is masked when it is captured and stays that way: if the agent
changes where it looks, older frames keep the view they were taken with.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from observe.masks import FRAME_SIZE, MaskId

STACK_DEPTH = 4

_ZERO_FRAME = np.zeros((FRAME_SIZE, FRAME_SIZE), dtype=np.float32)
_ZERO_FRAME.setflags(write=False)


@dataclass(frozen=True, eq=False)
class ObsStack:
    """Oldest-first frames plus the mask each one was captured under."""

    frames: Tuple[np.ndarray, ...]
    mask_provenance: Tuple[MaskId, ...]

    def __post_init__(self):
        if len(self.frames) != STACK_DEPTH or len(self.mask_provenance) != STACK_DEPTH:
            raise ValueError(
                f"ObsStack holds exactly {STACK_DEPTH} frames, "
                f"got {len(self.frames)} frames / {len(self.mask_provenance)} masks"
            )

    @classmethod
    def zeros(cls, mask: MaskId = MaskId.IDENTITY) -> "ObsStack":
        """All-zero stack; every slot is tagged with mask."""
        return cls((_ZERO_FRAME,) * STACK_DEPTH, (mask,) * STACK_DEPTH)

    @property
    def newest(self) -> np.ndarray:
        return self.frames[-1]

    def as_array(self) -> np.ndarray:
        """(4, 84, 84) float32 network input."""
        return np.stack(self.frames).astype(np.float32, copy=False)


def push_frame(stack: ObsStack, frame: np.ndarray, mask: MaskId) -> ObsStack:
    """
    Append an already-masked frame, evicting the oldest.

    Frames are shared, not copied, between consecutive stacks.
    """
    return ObsStack(stack.frames[1:] + (frame,), stack.mask_provenance[1:] + (mask,))


def initial_stack(frame: np.ndarray, mask: MaskId) -> ObsStack:
    """Zero stack with the episode's first (already masked) frame pushed."""
    return push_frame(ObsStack.zeros(mask), frame, mask)
