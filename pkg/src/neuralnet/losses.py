"""
Huber loss.
"""

from typing import Tuple

import numpy as np

from errors import ShapeError


def huber_loss(pred: np.ndarray, target: np.ndarray, delta: float = 1.0) -> Tuple[float, np.ndarray]:
    """
    Mean Huber loss and its gradient with respect to pred.

    Quadratic (e^2 / 2) for |e| <= delta, linear (delta * (|e| - delta / 2))
    outside, where e = pred - target.

    Returns:
        (loss, dloss/dpred)
    """
    pred = np.asarray(pred)
    target = np.asarray(target)
    if pred.shape != target.shape:
        raise ShapeError(f"huber_loss shape mismatch: {pred.shape} vs {target.shape}")

    error = pred - target
    abs_error = np.abs(error)
    quadratic = abs_error <= delta
    per_element = np.where(quadratic, 0.5 * error ** 2, delta * (abs_error - 0.5 * delta))
    count = max(error.size, 1)
    loss = float(per_element.sum() / count)
    grad = (np.clip(error, -delta, delta) / count).astype(pred.dtype, copy=False)
    return loss, grad
