"""
Layer kinds and their forward/backward kernels.

Supported kinds: valid (unpadded) Conv2D, Dense, ReLU, Flatten. Tensors are
batch-first numpy arrays: (N, C, H, W) for images, (N, D) for vectors.
Conv2D uses im2col so both passes are a single matrix product.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

CONV2D = "conv2d"
DENSE = "dense"
RELU = "relu"
FLATTEN = "flatten"


@dataclass(frozen=True)
class LayerSpec:
    """
    One layer of a chain.

    Attributes:
        kind: conv2d, dense, relu or flatten
        units: Output channels (conv2d) or output units (dense)
        kernel: Square kernel size (conv2d)
        stride: Stride (conv2d)
        init: Weight initializer name; biases always start at zero
    """

    kind: str
    units: int = 0
    kernel: int = 0
    stride: int = 1
    init: str = "he_uniform"

    @property
    def has_params(self) -> bool:
        return self.kind in (CONV2D, DENSE)


def Conv2D(out_channels: int, kernel: int, stride: int = 1) -> LayerSpec:
    return LayerSpec(CONV2D, units=out_channels, kernel=kernel, stride=stride)


def Dense(out_units: int) -> LayerSpec:
    return LayerSpec(DENSE, units=out_units)


def ReLU() -> LayerSpec:
    return LayerSpec(RELU)


def Flatten() -> LayerSpec:
    return LayerSpec(FLATTEN)


def conv_output_size(size: int, kernel: int, stride: int) -> int:
    return (size - kernel) // stride + 1


def im2col(x: np.ndarray, kernel: int, stride: int) -> Tuple[np.ndarray, int, int]:
    """
    Unfold (N, C, H, W) into (N*OH*OW, C*k*k) patch rows.

    Returns:
        (cols, OH, OW)
    """
    n, c, h, w = x.shape
    oh = conv_output_size(h, kernel, stride)
    ow = conv_output_size(w, kernel, stride)
    windows = sliding_window_view(x, (kernel, kernel), axis=(2, 3))[:, :, ::stride, ::stride]
    cols = windows.transpose(0, 2, 3, 1, 4, 5).reshape(n * oh * ow, c * kernel * kernel)
    return cols, oh, ow


def col2im(dcols: np.ndarray, x_shape: tuple, kernel: int, stride: int,
           oh: int, ow: int) -> np.ndarray:
    """Scatter-add patch gradients back to an (N, C, H, W) input gradient."""
    n, c, h, w = x_shape
    patches = dcols.reshape(n, oh, ow, c, kernel, kernel).transpose(0, 3, 4, 5, 1, 2)
    dx = np.zeros(x_shape, dtype=dcols.dtype)
    row_span = stride * (oh - 1) + 1
    col_span = stride * (ow - 1) + 1
    for i in range(kernel):
        for j in range(kernel):
            dx[:, :, i:i + row_span:stride, j:j + col_span:stride] += patches[:, :, i, j]
    return dx


def conv2d_forward(x: np.ndarray, weight: np.ndarray, bias: np.ndarray,
                   stride: int) -> Tuple[np.ndarray, tuple]:
    out_channels, _, kernel, _ = weight.shape
    cols, oh, ow = im2col(x, kernel, stride)
    out = cols @ weight.reshape(out_channels, -1).T + bias
    out = out.reshape(x.shape[0], oh, ow, out_channels).transpose(0, 3, 1, 2)
    return np.ascontiguousarray(out), (x.shape, cols, oh, ow)


def conv2d_backward(dout: np.ndarray, cache: tuple, weight: np.ndarray,
                    stride: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Returns:
        (dx, dweight, dbias)
    """
    x_shape, cols, oh, ow = cache
    out_channels, _, kernel, _ = weight.shape
    d2 = dout.transpose(0, 2, 3, 1).reshape(-1, out_channels)
    dweight = (d2.T @ cols).reshape(weight.shape)
    dbias = d2.sum(axis=0)
    dcols = d2 @ weight.reshape(out_channels, -1)
    dx = col2im(dcols, x_shape, kernel, stride, oh, ow)
    return dx, dweight, dbias


def dense_forward(x: np.ndarray, weight: np.ndarray, bias: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    return x @ weight.T + bias, x


def dense_backward(dout: np.ndarray, x: np.ndarray,
                   weight: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    return dout @ weight, dout.T @ x, dout.sum(axis=0)


def relu_forward(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    active = x > 0
    return np.where(active, x, 0).astype(x.dtype, copy=False), active


def relu_backward(dout: np.ndarray, active: np.ndarray) -> np.ndarray:
    return np.where(active, dout, 0).astype(dout.dtype, copy=False)
