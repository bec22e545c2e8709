"""
Two-headed Q-network.

A convolutional backbone runs once on the 4x84x84 stack; a game head and a
mask head each continue from the shared features with their own conv and
dense layers and output 3 Q-values.

All parameters live in one NetParams dict under the prefixes "backbone.",
"game." and "mask.".
"""

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from agent.actions import QOutput
from errors import CheckpointShapeError
from neuralnet.layers import Conv2D, Dense, Flatten, LayerSpec, ReLU
from neuralnet.network import NetParams, backward, build_params, forward, output_shape
from observe.masks import FRAME_SIZE
from observe.stack import STACK_DEPTH, ObsStack

BACKBONE_PREFIX = "backbone."
GAME_PREFIX = "game."
MASK_PREFIX = "mask."

INPUT_SHAPE = (STACK_DEPTH, FRAME_SIZE, FRAME_SIZE)


@dataclass(frozen=True)
class Architecture:
    """Backbone chain plus the layer chain both heads are built from."""

    name: str
    backbone: Tuple[LayerSpec, ...]
    head: Tuple[LayerSpec, ...]

    @property
    def feature_shape(self) -> tuple:
        return output_shape(self.backbone, INPUT_SHAPE)

    def param_shapes(self) -> Dict[str, tuple]:
        params = init_params(self, seed=0)
        return {name: value.shape for name, value in params.items()}


STANDARD = Architecture(
    name="standard",
    backbone=(Conv2D(32, 8, stride=4), ReLU(), Conv2D(64, 4, stride=2), ReLU()),
    head=(Conv2D(64, 3), ReLU(), Flatten(), Dense(256), ReLU(), Dense(3)),
)

# One backbone conv and a strided head conv with few channels; used by smoke runs and tests.
TINY = Architecture(
    name="tiny",
    backbone=(Conv2D(4, 8, stride=4), ReLU()),
    head=(Conv2D(4, 3, stride=2), ReLU(), Flatten(), Dense(16), ReLU(), Dense(3)),
)

ARCHITECTURES: Dict[str, Architecture] = {arch.name: arch for arch in (STANDARD, TINY)}


def init_params(architecture: Architecture, seed: int) -> NetParams:
    """Backbone, game head, mask head, drawn in that order from one seeded stream."""
    rng = np.random.default_rng(seed)
    params = build_params(architecture.backbone, INPUT_SHAPE, prefix=BACKBONE_PREFIX, rng=rng)
    features = architecture.feature_shape
    params.update(build_params(architecture.head, features, prefix=GAME_PREFIX, rng=rng))
    params.update(build_params(architecture.head, features, prefix=MASK_PREFIX, rng=rng))
    return params


def architecture_for(params: NetParams) -> Architecture:
    """
    Find the known architecture whose parameter shapes match params.

    Raises:
        CheckpointShapeError: If no architecture matches
    """
    shapes = {name: value.shape for name, value in params.items()}
    for architecture in ARCHITECTURES.values():
        if architecture.param_shapes() == shapes:
            return architecture
    raise CheckpointShapeError("parameter shapes match no known Q-network architecture")


def q_batch(params: NetParams, architecture: Architecture,
            x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, tuple]:
    """
    Batched forward pass.

    Args:
        x: (N, 4, 84, 84) float32

    Returns:
        (q_game (N, 3), q_mask (N, 3), cache for q_backward)
    """
    features, backbone_cache = forward(params, architecture.backbone, x, prefix=BACKBONE_PREFIX)
    q_game, game_cache = forward(params, architecture.head, features, prefix=GAME_PREFIX)
    q_mask, mask_cache = forward(params, architecture.head, features, prefix=MASK_PREFIX)
    return q_game, q_mask, (backbone_cache, game_cache, mask_cache)


def q_backward(params: NetParams, architecture: Architecture, cache: tuple,
               grad_game: np.ndarray, grad_mask: np.ndarray) -> NetParams:
    """Gradients for every parameter; the backbone receives the sum of both heads' input gradients."""
    backbone_cache, game_cache, mask_cache = cache
    grads, d_features_game = backward(params, architecture.head, game_cache, grad_game, prefix=GAME_PREFIX)
    mask_grads, d_features_mask = backward(params, architecture.head, mask_cache, grad_mask, prefix=MASK_PREFIX)
    grads.update(mask_grads)
    backbone_grads, _ = backward(
        params, architecture.backbone, backbone_cache, d_features_game + d_features_mask,
        prefix=BACKBONE_PREFIX,
    )
    grads.update(backbone_grads)
    return grads


def q_forward(params: NetParams, obs: ObsStack, architecture: Architecture = STANDARD) -> QOutput:
    """Q-values for a single observation stack."""
    q_game, q_mask, _ = q_batch(params, architecture, obs.as_array()[None])
    return QOutput(q_game=q_game[0], q_mask=q_mask[0])

