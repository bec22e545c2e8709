"""
Raw frame preprocessing: area-average resampling to 84x84.
"""

from functools import lru_cache

import numpy as np

from observe.masks import FRAME_SIZE


@lru_cache(maxsize=None)
def _area_weights(src: int, dst: int) -> np.ndarray:
    """
    (dst, src) matrix whose row i averages the source cells covered by
    output cell i, weighted by overlap length.
    """
    weights = np.zeros((dst, src), dtype=np.float64)
    scale = src / dst
    for i in range(dst):
        lo = i * scale
        hi = (i + 1) * scale
        j = int(np.floor(lo))
        while j < hi and j < src:
            overlap = min(hi, j + 1) - max(lo, j)
            if overlap > 0:
                weights[i, j] = overlap / scale
            j += 1
    weights.setflags(write=False)
    return weights


def preprocess(raw: np.ndarray) -> np.ndarray:
    """
    Downsample a raw grayscale frame to 84x84 by area averaging.

    Args:
        raw: (height, width) array with values in [0, 1]

    Returns:
        (84, 84) float32 frame in [0, 1]
    """
    raw = np.asarray(raw, dtype=np.float64)
    height, width = raw.shape
    rows = _area_weights(height, FRAME_SIZE)
    cols = _area_weights(width, FRAME_SIZE)
    out = rows @ raw @ cols.T
    return np.clip(out, 0.0, 1.0).astype(np.float32)
