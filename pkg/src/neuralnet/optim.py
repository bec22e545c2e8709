"""
Adam optimizer over NetParams dicts.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from errors import NumericError, ShapeError
from neuralnet.network import NetParams


@dataclass
class AdamState:
    """First/second moment estimates per parameter plus the step count."""

    m: NetParams = field(default_factory=dict)
    v: NetParams = field(default_factory=dict)
    t: int = 0

    @classmethod
    def zeros_like(cls, params: NetParams) -> "AdamState":
        return cls(
            m={name: np.zeros_like(value) for name, value in params.items()},
            v={name: np.zeros_like(value) for name, value in params.items()},
            t=0,
        )


def adam_step(params: NetParams, grads: NetParams, state: AdamState, lr: float,
              beta1: float = 0.9, beta2: float = 0.999,
              eps: float = 1e-8) -> Tuple[NetParams, AdamState]:
    """
    One bias-corrected Adam update.

    Inputs are not modified; new params and state are returned. Parameters
    without a gradient entry are carried over unchanged.

    Raises:
        NumericError: If any gradient holds NaN or Inf
        ShapeError: If a gradient shape differs from its parameter
    """
    for name, grad in grads.items():
        if grad.shape != params[name].shape:
            raise ShapeError(f"gradient for '{name}' has shape {grad.shape}, expected {params[name].shape}")
        if not np.all(np.isfinite(grad)):
            raise NumericError(f"non-finite gradient for '{name}'")

    t = state.t + 1
    correction1 = 1.0 - beta1 ** t
    correction2 = 1.0 - beta2 ** t
    new_params: NetParams = {}
    new_m: NetParams = {}
    new_v: NetParams = {}
    for name, value in params.items():
        grad = grads.get(name)
        m = state.m[name]
        v = state.v[name]
        if grad is None:
            grad = np.zeros_like(value)
        m = (beta1 * m + (1.0 - beta1) * grad).astype(value.dtype, copy=False)
        v = (beta2 * v + (1.0 - beta2) * grad * grad).astype(value.dtype, copy=False)
        m_hat = m / correction1
        v_hat = v / correction2
        update = lr * m_hat / (np.sqrt(v_hat) + eps)
        new_params[name] = (value - update).astype(value.dtype, copy=False)
        new_m[name] = m
        new_v[name] = v
    return new_params, AdamState(m=new_m, v=new_v, t=t)
