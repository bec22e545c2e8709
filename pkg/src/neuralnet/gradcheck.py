"""
Finite-difference verification of the analytic gradients.

Every check runs in float64 with central differences and reports the worst
elementwise relative error over all parameters and the input.
"""

from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from neuralnet.layers import CONV2D, Conv2D, Dense, Flatten, LayerSpec, ReLU
from neuralnet.losses import huber_loss
from neuralnet.network import backward, build_params, forward, output_shape

EPSILON = 1e-5
TOLERANCE = 1e-4

# Errors below this magnitude are rounding noise in the finite difference.
_DENOMINATOR_FLOOR = 1e-6

# name -> (chain, per-example input shape)
CHECK_CHAINS: Dict[str, Tuple[Tuple[LayerSpec, ...], tuple]] = {
    "dense": ((Dense(4),), (5,)),
    "dense_relu": ((Dense(6), ReLU(), Dense(3)), (5,)),
    "conv_relu_dense": ((Conv2D(3, 3), ReLU(), Flatten(), Dense(3)), (2, 6, 6)),
    "conv_stack": (
        (Conv2D(4, 3, stride=2), ReLU(), Conv2D(3, 2), ReLU(), Flatten(), Dense(3)),
        (2, 9, 9),
    ),
}


def _relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    if analytic.size == 0:
        return 0.0
    denominator = np.maximum(np.abs(analytic) + np.abs(numeric), _DENOMINATOR_FLOOR)
    return float(np.max(np.abs(analytic - numeric) / denominator))


def _numeric_gradient(loss: Callable[[], float], array: np.ndarray, epsilon: float) -> np.ndarray:
    """Central differences of loss() with respect to every entry of array, in place."""
    grad = np.zeros_like(array)
    for index in np.ndindex(array.shape):
        original = array[index]
        array[index] = original + epsilon
        plus = loss()
        array[index] = original - epsilon
        minus = loss()
        array[index] = original
        grad[index] = (plus - minus) / (2.0 * epsilon)
    return grad


def grad_check(chain: Sequence[LayerSpec], seed: int, input_shape: Optional[tuple] = None,
               batch: int = 2, epsilon: float = EPSILON) -> float:
    """
    Compare analytic and finite-difference gradients for a tiny instance of chain.

    The instance has random weights, random biases, a random batch and random
    regression targets; the loss is Huber.

    Args:
        chain: Layer specs to check
        seed: Seeds weights, biases, input and targets
        input_shape: Per-example input shape; defaults to (2, 6, 6) for chains
            starting with a convolution and (5,) otherwise

    Returns:
        Maximum relative error over all parameters and the input gradient
    """
    chain = tuple(chain)
    if input_shape is None:
        input_shape = (2, 6, 6) if chain and chain[0].kind == CONV2D else (5,)

    rng = np.random.default_rng(seed)
    params = build_params(chain, input_shape, dtype=np.float64, rng=rng)
    for name, value in params.items():
        if name.endswith(".bias"):
            params[name] = rng.normal(0.0, 0.1, size=value.shape)
    x = rng.normal(size=(batch,) + tuple(input_shape))
    target = rng.normal(size=(batch,) + output_shape(chain, input_shape))

    def loss() -> float:
        out, _ = forward(params, chain, x)
        return huber_loss(out, target)[0]

    out, cache = forward(params, chain, x)
    _, grad_out = huber_loss(out, target)
    grads, grad_input = backward(params, chain, cache, grad_out)

    worst = 0.0
    for name in params:
        numeric = _numeric_gradient(loss, params[name], epsilon)
        worst = max(worst, _relative_error(grads[name], numeric))
    worst = max(worst, _relative_error(grad_input, _numeric_gradient(loss, x, epsilon)))
    return worst


def grad_check_suite(seeds: int = 10) -> Dict[str, float]:
    """Worst relative error per named chain over seeds 0..seeds-1."""
    results = {}
    for name, (chain, input_shape) in CHECK_CHAINS.items():
        results[name] = max(grad_check(chain, seed, input_shape) for seed in range(seeds))
    return results
