"""Minimal differentiable-network core.

Dense and convolution layers with reverse-mode gradients, Adam, He
initialization, and Polyak target averaging. Float64 throughout; the conv
and pooling inner loops dispatch to a compiled extension when available
(see ``hugdrl.nn.kernels``).
"""

from hugdrl.nn.network import NetworkParams, NetworkSpec, backward, forward, he_init
from hugdrl.nn.optim import AdamState, adam_step, polyak_update
from hugdrl.nn.checkpoint import load_params, save_params

__all__ = [
    "NetworkSpec",
    "NetworkParams",
    "he_init",
    "forward",
    "backward",
    "AdamState",
    "adam_step",
    "polyak_update",
    "save_params",
    "load_params",
]
