"""Versioned parameter checkpoints with integrity checking.

Format: a .npz archive holding a JSON header (format version, spec fields,
sha256 of the flat parameter bytes) plus the parameter arrays. Loading
verifies the checksum and, when the caller states an expected spec, fails
loudly on any mismatch.
"""

from __future__ import annotations

import hashlib
import json

import numpy as np

from hugdrl.errors import ChecksumError
from hugdrl.nn.network import NetworkParams, NetworkSpec

FORMAT_VERSION = 1


def _spec_dict(spec: NetworkSpec) -> dict:
    return {
        "input_hw": list(spec.input_hw),
        "conv_features": list(spec.conv_features),
        "kernel": spec.kernel,
        "dense_features": list(spec.dense_features),
        "head": spec.head,
        "action_input": spec.action_input,
    }


def _spec_from_dict(d: dict) -> NetworkSpec:
    return NetworkSpec(
        input_hw=tuple(d["input_hw"]),
        conv_features=tuple(d["conv_features"]),
        kernel=d["kernel"],
        dense_features=tuple(d["dense_features"]),
        head=d["head"],
        action_input=d["action_input"],
    )


def _digest(params: NetworkParams) -> str:
    h = hashlib.sha256()
    for t in params.tensors():
        h.update(np.ascontiguousarray(t).tobytes())
    return h.hexdigest()


def save_params(path, params: NetworkParams, meta: dict | None = None):
    header = {
        "format_version": FORMAT_VERSION,
        "spec": _spec_dict(params.spec),
        "sha256": _digest(params),
        "meta": meta or {},
    }
    arrays = {}
    for i, (w, b) in enumerate(zip(params.weights, params.biases)):
        arrays[f"w{i}"] = w
        arrays[f"b{i}"] = b
    np.savez(path, header=np.frombuffer(
        json.dumps(header).encode(), dtype=np.uint8), **arrays)


def load_params(path, expected_spec: NetworkSpec | None = None) -> NetworkParams:
    with np.load(path) as z:
        try:
            header = json.loads(bytes(z["header"]).decode())
        except (KeyError, ValueError) as e:
            raise ChecksumError(f"{path}: not a parameter checkpoint") from e
        if header.get("format_version") != FORMAT_VERSION:
            raise ChecksumError(
                f"{path}: unsupported checkpoint version "
                f"{header.get('format_version')}")
        spec = _spec_from_dict(header["spec"])
        n_layers = len(spec.layer_sizes())
        weights = [z[f"w{i}"] for i in range(n_layers)]
        biases = [z[f"b{i}"] for i in range(n_layers)]
    params = NetworkParams(spec, weights, biases)
    if _digest(params) != header["sha256"]:
        raise ChecksumError(f"{path}: checksum mismatch, file corrupted")
    if expected_spec is not None and spec != expected_spec:
        raise ChecksumError(
            f"{path}: checkpoint spec {spec} != expected {expected_spec}")
    for (w_shape, b_shape), w, b in zip(spec.layer_sizes(), weights, biases):
        if w.shape != w_shape or b.shape != b_shape:
            raise ChecksumError(f"{path}: parameter shapes do not match spec")
    return params
