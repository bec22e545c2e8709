"""
One-third occlusion masks.

A mask keeps one horizontal or vertical band of an 84x84 frame and zeroes the
other two thirds. Zero is also the background intensity, so an occluded pixel
looks exactly like empty field.
"""

from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

FRAME_SIZE = 84
BAND = FRAME_SIZE // 3


class MaskFamily(Enum):
    """Which set of three masks a run may choose from."""

    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


class MaskId(Enum):
    """A single view selection. Values double as CSV labels."""

    H_TOP = "HTop"
    H_MID = "HMid"
    H_BOT = "HBot"
    V_LEFT = "VLeft"
    V_MID = "VMid"
    V_RIGHT = "VRight"
    IDENTITY = "Identity"

    @property
    def family(self) -> Optional[MaskFamily]:
        """Owning family, or None for IDENTITY."""
        if self is MaskId.IDENTITY:
            return None
        if self.name.startswith("H_"):
            return MaskFamily.HORIZONTAL
        return MaskFamily.VERTICAL

    def band(self) -> Optional[Tuple[int, int, int]]:
        """
        Visible band as (axis, start, stop).

        axis 0 selects rows, axis 1 selects columns. IDENTITY returns None.
        """
        if self is MaskId.IDENTITY:
            return None
        axis = 0 if self.family is MaskFamily.HORIZONTAL else 1
        index = family_masks(self.family).index(self)
        return axis, index * BAND, (index + 1) * BAND


_FAMILIES = {
    MaskFamily.HORIZONTAL: (MaskId.H_TOP, MaskId.H_MID, MaskId.H_BOT),
    MaskFamily.VERTICAL: (MaskId.V_LEFT, MaskId.V_MID, MaskId.V_RIGHT),
}


def family_masks(family: MaskFamily) -> List[MaskId]:
    """
    Masks of a family in action-index order.

    Horizontal: [H_TOP, H_MID, H_BOT]; vertical: [V_LEFT, V_MID, V_RIGHT].
    """
    return list(_FAMILIES[MaskFamily(family)])


def apply_mask(frame: np.ndarray, mask: MaskId) -> np.ndarray:
    """
    Zero everything outside the mask's visible band.

    Args:
        frame: (84, 84) frame
        mask: View to keep

    Returns:
        Masked frame; IDENTITY returns the input frame itself
    """
    band = mask.band()
    if band is None:
        return frame
    axis, start, stop = band
    out = np.zeros_like(frame)
    if axis == 0:
        out[start:stop, :] = frame[start:stop, :]
    else:
        out[:, start:stop] = frame[:, start:stop]
    return out
