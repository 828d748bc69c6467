"""Adam optimizer and Polyak target averaging over NetworkParams."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from hugdrl.errors import NumericError, ShapeError
from hugdrl.nn.network import NetworkParams


@dataclass
class AdamState:
    """First/second-moment accumulators mirroring one parameter set."""

    m: list[np.ndarray]
    v: list[np.ndarray]
    t: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def for_params(cls, params: NetworkParams) -> "AdamState":
        return cls(
            m=[np.zeros_like(p) for p in params.tensors()],
            v=[np.zeros_like(p) for p in params.tensors()],
        )


def adam_step(params: NetworkParams, grads: NetworkParams, state: AdamState,
              lr: float):
    """One bias-corrected Adam update; returns (params', state')."""
    new_tensors = []
    new_m, new_v = [], []
    t = state.t + 1
    b1, b2, eps = state.beta1, state.beta2, state.eps
    for p, g, m, v in zip(params.tensors(), grads.tensors(), state.m, state.v):
        if p.shape != g.shape:
            raise ShapeError(f"gradient shape {g.shape} != param shape {p.shape}")
        if not np.all(np.isfinite(g)):
            raise NumericError("non-finite gradient; aborting the update")
        m = b1 * m + (1.0 - b1) * g
        v = b2 * v + (1.0 - b2) * g * g
        m_hat = m / (1.0 - b1**t)
        v_hat = v / (1.0 - b2**t)
        new_tensors.append(p - lr * m_hat / (np.sqrt(v_hat) + eps))
        new_m.append(m)
        new_v.append(v)
    weights = new_tensors[0::2]
    biases = new_tensors[1::2]
    return (
        NetworkParams(params.spec, weights, biases),
        AdamState(new_m, new_v, t, b1, b2, eps),
    )


def polyak_update(target: NetworkParams, source: NetworkParams,
                  tau: float) -> NetworkParams:
    """target' = tau * source + (1 - tau) * target, elementwise."""
    if target.spec != source.spec:
        raise ShapeError("polyak update across mismatched specs")
    weights = [tau * s + (1.0 - tau) * t
               for t, s in zip(target.weights, source.weights)]
    biases = [tau * s + (1.0 - tau) * t
              for t, s in zip(target.biases, source.biases)]
    return NetworkParams(target.spec, weights, biases)
