# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled conv/pool primitives; see hugdrl.nn.kernels for the contract."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def im2col(cnp.ndarray[double, ndim=4] x, int kh, int kw):
    cdef int n = x.shape[0], c = x.shape[1], h = x.shape[2], w = x.shape[3]
    cdef int oh = h - kh + 1, ow = w - kw + 1
    cdef cnp.ndarray[double, ndim=2] out = np.empty((n * oh * ow, c * kh * kw))
    cdef double[:, :, :, :] xv = x
    cdef double[:, :] ov = out
    cdef int b, ci, i, j, r, s, row, col
    with nogil:
        for b in range(n):
            for r in range(oh):
                for s in range(ow):
                    row = (b * oh + r) * ow + s
                    for ci in range(c):
                        for i in range(kh):
                            col = (ci * kh + i) * kw
                            for j in range(kw):
                                ov[row, col + j] = xv[b, ci, r + i, s + j]
    return out


def col2im(cnp.ndarray[double, ndim=2] cols, int n, int c, int h, int w,
           int kh, int kw):
    cdef int oh = h - kh + 1, ow = w - kw + 1
    cdef cnp.ndarray[double, ndim=4] dx = np.zeros((n, c, h, w))
    cdef double[:, :] cv = cols
    cdef double[:, :, :, :] dv = dx
    cdef int b, ci, i, j, r, s, row, col
    with nogil:
        for b in range(n):
            for r in range(oh):
                for s in range(ow):
                    row = (b * oh + r) * ow + s
                    for ci in range(c):
                        for i in range(kh):
                            col = (ci * kh + i) * kw
                            for j in range(kw):
                                dv[b, ci, r + i, s + j] += cv[row, col + j]
    return dx


def maxpool2_fwd(cnp.ndarray[double, ndim=4] x):
    cdef int n = x.shape[0], c = x.shape[1], h = x.shape[2], w = x.shape[3]
    cdef int h2 = h // 2, w2 = w // 2
    cdef cnp.ndarray[double, ndim=4] y = np.empty((n, c, h2, w2))
    cdef cnp.ndarray[cnp.uint8_t, ndim=4] idx = np.empty((n, c, h2, w2),
                                                         dtype=np.uint8)
    cdef double[:, :, :, :] xv = x
    cdef double[:, :, :, :] yv = y
    cdef unsigned char[:, :, :, :] iv = idx
    cdef int b, ci, r, s, k, best
    cdef double v, vbest
    with nogil:
        for b in range(n):
            for ci in range(c):
                for r in range(h2):
                    for s in range(w2):
                        vbest = xv[b, ci, 2 * r, 2 * s]
                        best = 0
                        v = xv[b, ci, 2 * r, 2 * s + 1]
                        if v > vbest:
                            vbest = v; best = 1
                        v = xv[b, ci, 2 * r + 1, 2 * s]
                        if v > vbest:
                            vbest = v; best = 2
                        v = xv[b, ci, 2 * r + 1, 2 * s + 1]
                        if v > vbest:
                            vbest = v; best = 3
                        yv[b, ci, r, s] = vbest
                        iv[b, ci, r, s] = <unsigned char>best
    return y, idx


def maxpool2_bwd(cnp.ndarray[double, ndim=4] dy,
                 cnp.ndarray[cnp.uint8_t, ndim=4] idx, int h, int w):
    cdef int n = dy.shape[0], c = dy.shape[1], h2 = dy.shape[2], w2 = dy.shape[3]
    cdef cnp.ndarray[double, ndim=4] dx = np.zeros((n, c, h, w))
    cdef double[:, :, :, :] gv = dy
    cdef double[:, :, :, :] dv = dx
    cdef unsigned char[:, :, :, :] iv = idx
    cdef int b, ci, r, s, k
    with nogil:
        for b in range(n):
            for ci in range(c):
                for r in range(h2):
                    for s in range(w2):
                        k = iv[b, ci, r, s]
                        dv[b, ci, 2 * r + (k >> 1), 2 * s + (k & 1)] = gv[b, ci, r, s]
    return dx
