"""Network specs, parameters, and the forward/backward pair.

A network is a fixed pipeline: [conv -> relu -> 2x2 maxpool] per conv
feature count, flatten, optional scalar-action concat (value networks),
dense -> relu per hidden width, and a final 1-unit head (logistic squash
for policy networks, linear for value networks).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from hugdrl.errors import ConfigurationError, ShapeError, UsageError
from hugdrl.nn import kernels


@dataclass(frozen=True)
class NetworkSpec:
    """Shape contract for one network; defaults follow the driving agents."""

    input_hw: tuple[int, int] = (45, 80)
    conv_features: tuple[int, ...] = (6, 16)
    kernel: int = 6
    dense_features: tuple[int, ...] = (256, 128, 64)
    head: str = "logistic"  # "logistic" or "linear"
    action_input: bool = False
    output_units: int = 1

    def __post_init__(self):
        if self.head not in ("logistic", "linear"):
            raise ConfigurationError(f"unknown head {self.head!r}")
        if self.kernel < 1 or self.output_units < 1 or any(
            f < 1 for f in self.conv_features
        ) or any(d < 1 for d in self.dense_features):
            raise ConfigurationError("layer sizes must be positive")
        self.conv_shapes()  # raises if the stack does not compose

    def conv_shapes(self) -> list[tuple[int, int, int]]:
        """(channels, H, W) after each conv+pool block, input first."""
        h, w = self.input_hw
        shapes = [(1, h, w)]
        c = 1
        for f in self.conv_features:
            h, w = h - self.kernel + 1, w - self.kernel + 1
            if h < 1 or w < 1:
                raise ConfigurationError(
                    f"kernel {self.kernel} does not fit {self.input_hw} grid"
                )
            h, w = h // 2, w // 2
            if h < 1 or w < 1:
                raise ConfigurationError("pooling collapsed a dimension to zero")
            c = f
            shapes.append((c, h, w))
        return shapes

    def flat_features(self) -> int:
        c, h, w = self.conv_shapes()[-1]
        n = c * h * w
        return n + 1 if self.action_input else n

    def layer_sizes(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """(weight shape, bias shape) per parameterized layer, in order."""
        sizes = []
        c_in = 1
        for f in self.conv_features:
            sizes.append(((f, c_in, self.kernel, self.kernel), (f,)))
            c_in = f
        d_in = self.flat_features()
        for d in self.dense_features:
            sizes.append(((d_in, d), (d,)))
            d_in = d
        sizes.append(((d_in, self.output_units), (self.output_units,)))
        return sizes


@dataclass
class NetworkParams:
    """Per-layer weight/bias tensors for one NetworkSpec."""

    spec: NetworkSpec
    weights: list[np.ndarray]
    biases: list[np.ndarray]

    def tensors(self):
        for w, b in zip(self.weights, self.biases):
            yield w
            yield b

    def copy(self) -> "NetworkParams":
        return NetworkParams(
            self.spec,
            [w.copy() for w in self.weights],
            [b.copy() for b in self.biases],
        )

    def check_finite(self):
        for t in self.tensors():
            if not np.all(np.isfinite(t)):
                raise ShapeError("non-finite parameter tensor")


def he_init(spec: NetworkSpec, seed: int) -> NetworkParams:
    """He-initialized parameters: W ~ N(0, 2/fan_in), biases zero."""
    rng = np.random.default_rng(seed)
    weights, biases = [], []
    for w_shape, b_shape in spec.layer_sizes():
        fan_in = int(np.prod(w_shape[1:])) if len(w_shape) == 4 else w_shape[0]
        weights.append(rng.normal(0.0, np.sqrt(2.0 / fan_in), w_shape))
        biases.append(np.zeros(b_shape))
    return NetworkParams(spec, weights, biases)


def zeros_like_params(params: NetworkParams) -> NetworkParams:
    return NetworkParams(
        params.spec,
        [np.zeros_like(w) for w in params.weights],
        [np.zeros_like(b) for b in params.biases],
    )


class Tape:
    """Activation record from one forward pass, consumed by backward()."""

    def __init__(self, params, batched, action_given):
        self.params = params
        self.batched = batched
        self.action_given = action_given
        self.steps = []  # (kind, cache) in forward order
        self.spent = False


def _sigmoid(x):
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def _as_batch(spec, x):
    x = np.asarray(x, dtype=np.float64)
    h, w = spec.input_hw
    if x.shape == (h, w):
        return x[None], False
    if x.ndim == 3 and x.shape[1:] == (h, w):
        return x, True
    raise ShapeError(f"input shape {x.shape} does not match grid {spec.input_hw}")


def forward(params: NetworkParams, x, action=None):
    """Run the network; returns (output, tape).

    ``x`` is one grid (H, W) or a batch (N, H, W). Value networks take
    ``action`` (scalar or shape (N,)). Output is a float for single inputs,
    shape (N,) for batches.
    """
    spec = params.spec
    xb, batched = _as_batch(spec, x)
    n = xb.shape[0]
    if spec.action_input:
        if action is None:
            raise ShapeError("this network requires an action input")
        a = np.asarray(action, dtype=np.float64).reshape(-1)
        if a.shape[0] == 1 and n > 1:
            a = np.repeat(a, n)
        if a.shape[0] != n:
            raise ShapeError(f"action batch {a.shape[0]} != state batch {n}")
    elif action is not None:
        raise ShapeError("this network takes no action input")

    tape = Tape(params, batched, spec.action_input)
    k = spec.kernel
    cur = xb[:, None, :, :]  # (N, 1, H, W)
    li = 0
    for _ in spec.conv_features:
        w, b = params.weights[li], params.biases[li]
        f = w.shape[0]
        nn_, c, h, wd = cur.shape
        oh, ow = h - k + 1, wd - k + 1
        col = kernels.im2col(np.ascontiguousarray(cur), k, k)
        z = col @ w.reshape(f, -1).T + b
        z = z.reshape(nn_, oh, ow, f).transpose(0, 3, 1, 2)
        tape.steps.append(("conv", (col, cur.shape, li)))
        mask = z > 0
        cur = np.where(mask, z, 0.0)
        tape.steps.append(("relu", mask))
        cur = np.ascontiguousarray(cur)
        pooled, idx = kernels.maxpool2_fwd(cur)
        tape.steps.append(("pool", (idx, cur.shape)))
        cur = pooled
        li += 1

    conv_out_shape = cur.shape
    cur = cur.reshape(n, -1)
    tape.steps.append(("flatten", conv_out_shape))
    if spec.action_input:
        cur = np.concatenate([cur, a[:, None]], axis=1)
        tape.steps.append(("concat", cur.shape[1] - 1))

    for _ in spec.dense_features:
        w, b = params.weights[li], params.biases[li]
        z = cur @ w + b
        tape.steps.append(("dense", (cur, li)))
        mask = z > 0
        cur = np.where(mask, z, 0.0)
        tape.steps.append(("relu", mask))
        li += 1

    w, b = params.weights[li], params.biases[li]
    z = cur @ w + b
    tape.steps.append(("dense", (cur, li)))
    if spec.head == "logistic":
        z = _sigmoid(z)
        tape.steps.append(("logistic", z))
    out = z[:, 0] if spec.output_units == 1 else z
    if not batched:
        out = float(out[0]) if spec.output_units == 1 else out[0]
    return out, tape


def backward(tape: Tape, upstream):
    """Reverse pass. Returns (grads, input_grads).

    ``grads`` is a NetworkParams of the same shapes holding dLoss/dParam.
    ``input_grads`` is dLoss/dGrid, plus dLoss/dAction for value networks
    (as a tuple); shaped like the forward inputs.
    """
    if tape.spent:
        raise UsageError("tape already consumed by a backward pass")
    tape.spent = True
    params = tape.params
    spec = params.spec
    k = spec.kernel

    last_kind, last_cache = tape.steps[-1]
    n = last_cache.shape[0] if last_kind == "logistic" else last_cache[0].shape[0]
    g = np.asarray(upstream, dtype=np.float64)
    if g.size != n * spec.output_units:
        raise ShapeError(
            f"upstream gradient size {g.size} != output size {n}x{spec.output_units}")
    grads = zeros_like_params(params)
    d = g.reshape(n, spec.output_units)
    d_action = None

    for kind, cache in reversed(tape.steps):
        if kind == "logistic":
            y = cache
            d = d * y * (1.0 - y)
        elif kind == "dense":
            x_in, li = cache
            grads.weights[li] += x_in.T @ d
            grads.biases[li] += d.sum(axis=0)
            d = d @ params.weights[li].T
        elif kind == "relu":
            d = d * cache.reshape(d.shape)
        elif kind == "concat":
            split = cache
            d_action = d[:, split]
            d = d[:, :split]
        elif kind == "flatten":
            d = d.reshape(cache)
        elif kind == "pool":
            idx, in_shape = cache
            d = kernels.maxpool2_bwd(np.ascontiguousarray(d), idx, in_shape[2], in_shape[3])
        elif kind == "conv":
            col, in_shape, li = cache
            nn_, c, h, wd = in_shape
            f = params.weights[li].shape[0]
            oh, ow = h - k + 1, wd - k + 1
            dz = np.ascontiguousarray(d.transpose(0, 2, 3, 1)).reshape(nn_ * oh * ow, f)
            grads.weights[li] += (dz.T @ col).reshape(params.weights[li].shape)
            grads.biases[li] += dz.sum(axis=0)
            dcol = dz @ params.weights[li].reshape(f, -1)
            d = kernels.col2im(np.ascontiguousarray(dcol), nn_, c, h, wd, k, k)

    d_grid = d[:, 0, :, :]
    if not tape.batched:
        d_grid = d_grid[0]
        if d_action is not None:
            d_action = float(d_action[0])
    if tape.action_given:
        return grads, (d_grid, d_action)
    return grads, d_grid
