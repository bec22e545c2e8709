"""
Layer chains: parameter construction, forward pass and backpropagation.

A chain is a sequence of LayerSpec. Its parameters (NetParams) are a flat
dict keyed "<prefix><layer index>.weight" / ".bias", so several chains (a
shared backbone and two heads) can live in one dict under different
prefixes.
"""

import hashlib
from typing import Dict, List, Sequence, Tuple

import numpy as np

from errors import NumericError, ShapeError
from neuralnet import layers
from neuralnet.layers import CONV2D, DENSE, FLATTEN, RELU, LayerSpec

NetParams = Dict[str, np.ndarray]


def param_names(chain: Sequence[LayerSpec], prefix: str = "") -> List[str]:
    names = []
    for index, spec in enumerate(chain):
        if spec.has_params:
            names.extend([f"{prefix}{index}.weight", f"{prefix}{index}.bias"])
    return names


def output_shape(chain: Sequence[LayerSpec], input_shape: tuple) -> tuple:
    """
    Per-example output shape of a chain.

    Args:
        chain: Layer specs
        input_shape: Per-example input shape, (C, H, W) or (D,)

    Raises:
        ShapeError: If a layer cannot accept its input
    """
    shape = tuple(input_shape)
    for index, spec in enumerate(chain):
        if spec.kind == CONV2D:
            if len(shape) != 3:
                raise ShapeError(f"layer {index}: conv2d needs (C, H, W) input, got {shape}")
            if spec.stride < 1:
                raise ShapeError(f"layer {index}: stride must be >= 1")
            c, h, w = shape
            if spec.kernel < 1 or spec.kernel > h or spec.kernel > w:
                raise ShapeError(f"layer {index}: kernel {spec.kernel} does not fit input {h}x{w}")
            shape = (
                spec.units,
                layers.conv_output_size(h, spec.kernel, spec.stride),
                layers.conv_output_size(w, spec.kernel, spec.stride),
            )
        elif spec.kind == DENSE:
            if len(shape) != 1:
                raise ShapeError(f"layer {index}: dense needs flat input, got {shape}")
            shape = (spec.units,)
        elif spec.kind == FLATTEN:
            shape = (int(np.prod(shape)),)
        elif spec.kind != RELU:
            raise ShapeError(f"layer {index}: unknown layer kind '{spec.kind}'")
    return shape


def build_params(chain: Sequence[LayerSpec], input_shape: tuple, seed: int = 0,
                 dtype=np.float32, prefix: str = "",
                 rng: np.random.Generator = None) -> NetParams:
    """
    He-uniform weights and zero biases for every parameterized layer.

    Args:
        chain: Layer specs
        input_shape: Per-example input shape
        seed: Seed used when rng is not given
        dtype: float32 for training, float64 for gradient checks
        prefix: Name prefix for every parameter
        rng: Generator to draw from (lets several chains share one stream)
    """
    rng = rng if rng is not None else np.random.default_rng(seed)
    params: NetParams = {}
    shape = tuple(input_shape)
    for index, spec in enumerate(chain):
        if spec.kind == CONV2D:
            fan_in = shape[0] * spec.kernel * spec.kernel
            w_shape = (spec.units, shape[0], spec.kernel, spec.kernel)
        elif spec.kind == DENSE:
            fan_in = shape[0]
            w_shape = (spec.units, shape[0])
        else:
            shape = output_shape([spec], shape)
            continue
        if spec.init != "he_uniform":
            raise ValueError(f"unsupported initializer '{spec.init}'")
        limit = np.sqrt(6.0 / fan_in)
        params[f"{prefix}{index}.weight"] = rng.uniform(-limit, limit, size=w_shape).astype(dtype)
        params[f"{prefix}{index}.bias"] = np.zeros(spec.units, dtype=dtype)
        shape = output_shape([spec], shape)
    return params


def forward(params: NetParams, chain: Sequence[LayerSpec], x: np.ndarray,
            prefix: str = "") -> Tuple[np.ndarray, list]:
    """
    Run a chain on a batch.

    Returns:
        (output, cache) where cache feeds backward()

    Raises:
        ShapeError: If the input does not fit the first layers
        NumericError: If the output contains NaN or Inf
    """
    cache = []
    out = x
    for index, spec in enumerate(chain):
        if spec.kind == CONV2D:
            weight = params[f"{prefix}{index}.weight"]
            if out.ndim != 4 or out.shape[1] != weight.shape[1]:
                raise ShapeError(
                    f"layer {index}: conv2d expects (N, {weight.shape[1]}, H, W), got {out.shape}"
                )
            if out.shape[2] < spec.kernel or out.shape[3] < spec.kernel:
                raise ShapeError(f"layer {index}: input {out.shape[2:]} smaller than kernel")
            out, entry = layers.conv2d_forward(out, weight, params[f"{prefix}{index}.bias"], spec.stride)
        elif spec.kind == DENSE:
            weight = params[f"{prefix}{index}.weight"]
            if out.ndim != 2 or out.shape[1] != weight.shape[1]:
                raise ShapeError(
                    f"layer {index}: dense expects (N, {weight.shape[1]}), got {out.shape}"
                )
            out, entry = layers.dense_forward(out, weight, params[f"{prefix}{index}.bias"])
        elif spec.kind == RELU:
            out, entry = layers.relu_forward(out)
        elif spec.kind == FLATTEN:
            entry = out.shape
            out = out.reshape(out.shape[0], -1)
        else:
            raise ShapeError(f"layer {index}: unknown layer kind '{spec.kind}'")
        cache.append(entry)

    if not np.all(np.isfinite(out)):
        raise NumericError("non-finite values in network output")
    return out, cache


def backward(params: NetParams, chain: Sequence[LayerSpec], cache: list,
             grad_out: np.ndarray, prefix: str = "") -> Tuple[NetParams, np.ndarray]:
    """
    Backpropagate an output gradient through a chain.

    Returns:
        (parameter gradients keyed like params, input gradient)
    """
    if len(cache) != len(chain):
        raise ShapeError(f"cache has {len(cache)} entries for a {len(chain)}-layer chain")

    grads: NetParams = {}
    grad = grad_out
    for index in range(len(chain) - 1, -1, -1):
        spec = chain[index]
        entry = cache[index]
        if spec.kind == CONV2D:
            weight = params[f"{prefix}{index}.weight"]
            grad, dweight, dbias = layers.conv2d_backward(grad, entry, weight, spec.stride)
        elif spec.kind == DENSE:
            weight = params[f"{prefix}{index}.weight"]
            if grad.shape[1] != weight.shape[0]:
                raise ShapeError(f"layer {index}: gradient {grad.shape} does not match dense output")
            grad, dweight, dbias = layers.dense_backward(grad, entry, weight)
        elif spec.kind == RELU:
            grad = layers.relu_backward(grad, entry)
            continue
        else:
            grad = grad.reshape(entry)
            continue
        grads[f"{prefix}{index}.weight"] = dweight
        grads[f"{prefix}{index}.bias"] = dbias
    return grads, grad


def copy_params(params: NetParams) -> NetParams:
    """Deep copy."""
    return {name: value.copy() for name, value in params.items()}


def params_digest(params: NetParams) -> str:
    """SHA-256 over parameter names, shapes and bytes, in name order."""
    digest = hashlib.sha256()
    for name in sorted(params):
        value = np.ascontiguousarray(params[name])
        digest.update(name.encode("utf-8"))
        digest.update(repr(value.shape).encode("ascii"))
        digest.update(value.tobytes())
    return digest.hexdigest()
