"""
Neuralnet package.

Small numpy network core used by the Q-network:
- layers: Conv2D / Dense / ReLU / Flatten specs and kernels
- network: parameter init, forward, backward over layer chains
- losses: Huber loss
- optim: Adam
- gradcheck: finite-difference gradient verification
"""

from neuralnet.gradcheck import grad_check, grad_check_suite
from neuralnet.layers import Conv2D, Dense, Flatten, LayerSpec, ReLU
from neuralnet.losses import huber_loss
from neuralnet.network import (
    NetParams,
    backward,
    build_params,
    copy_params,
    forward,
    output_shape,
    params_digest,
)
from neuralnet.optim import AdamState, adam_step

__all__ = [
    'AdamState', 'Conv2D', 'Dense', 'Flatten', 'LayerSpec', 'NetParams', 'ReLU',
    'adam_step', 'backward', 'build_params', 'copy_params', 'forward', 'grad_check',
    'grad_check_suite', 'huber_loss', 'output_shape', 'params_digest',
]
