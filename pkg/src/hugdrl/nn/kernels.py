"""Hot kernels for conv/pool layers: compiled extension with NumPy fallback.

The compiled module (``hugdrl.nn._kernels``, Cython) is preferred when it
imports; set ``HUGDRL_FORCE_NUMPY=1`` to force the fallback. Both backends
implement the same four primitives and agree to float64 round-off:

- ``im2col(x, kh, kw)``          patch matrix for stride-1 valid convolution
- ``col2im(cols, n, c, h, w, kh, kw)``  scatter-add transpose of im2col
- ``maxpool2_fwd(x)``            2x2/stride-2 max pool, returns argmax codes
- ``maxpool2_bwd(dy, idx, h, w)``  routes gradient to argmax positions only

Layout: activations are (N, C, H, W) float64, C-contiguous. The column
matrix is (N*OH*OW, C*KH*KW) with the kernel window unrolled row-major.
"""

import os

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


def _np_im2col(x, kh, kw):
    n, c, h, w = x.shape
    oh, ow = h - kh + 1, w - kw + 1
    win = sliding_window_view(x, (kh, kw), axis=(2, 3))  # (N,C,OH,OW,KH,KW)
    return np.ascontiguousarray(win.transpose(0, 2, 3, 1, 4, 5)).reshape(
        n * oh * ow, c * kh * kw
    )


def _np_col2im(cols, n, c, h, w, kh, kw):
    oh, ow = h - kh + 1, w - kw + 1
    dx = np.zeros((n, c, h, w))
    patches = cols.reshape(n, oh, ow, c, kh, kw).transpose(0, 3, 1, 2, 4, 5)
    for i in range(kh):
        for j in range(kw):
            dx[:, :, i : i + oh, j : j + ow] += patches[:, :, :, :, i, j]
    return dx


def _np_maxpool2_fwd(x):
    n, c, h, w = x.shape
    h2, w2 = h // 2, w // 2
    v = x[:, :, : 2 * h2, : 2 * w2].reshape(n, c, h2, 2, w2, 2)
    v = np.ascontiguousarray(v.transpose(0, 1, 2, 4, 3, 5)).reshape(n, c, h2, w2, 4)
    idx = v.argmax(axis=4).astype(np.uint8)
    y = np.take_along_axis(v, idx[..., None].astype(np.intp), axis=4)[..., 0]
    return np.ascontiguousarray(y), idx


def _np_maxpool2_bwd(dy, idx, h, w):
    n, c, h2, w2 = dy.shape
    dx = np.zeros((n, c, h, w))
    di, dj = idx >> 1, idx & 1
    rows = (np.arange(h2)[None, None, :, None] * 2 + di).astype(np.intp)
    cols = (np.arange(w2)[None, None, None, :] * 2 + dj).astype(np.intp)
    ni = np.arange(n)[:, None, None, None]
    ci = np.arange(c)[None, :, None, None]
    dx[ni, ci, rows, cols] = dy
    return dx


_BACKEND = "numpy"
im2col, col2im = _np_im2col, _np_col2im
maxpool2_fwd, maxpool2_bwd = _np_maxpool2_fwd, _np_maxpool2_bwd

if not os.environ.get("HUGDRL_FORCE_NUMPY"):
    try:
        from hugdrl.nn import _kernels

        im2col = _kernels.im2col
        col2im = _kernels.col2im
        maxpool2_fwd = _kernels.maxpool2_fwd
        maxpool2_bwd = _kernels.maxpool2_bwd
        _BACKEND = "compiled"
    except ImportError:
        pass


def backend() -> str:
    """Active kernel backend: "compiled" or "numpy"."""
    return _BACKEND
