# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for the lag and autocorrelation sums.

Each lag is summed by one thread in a fixed order, so results do not depend
on the thread count.
"""
import numpy as np

from cython.parallel cimport prange


cdef inline double _dot(const double* a, const double* b, Py_ssize_t m) noexcept nogil:
    # four independent accumulators so the adds pipeline
    cdef double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0
    cdef Py_ssize_t i = 0
    while i + 4 <= m:
        s0 += a[i] * b[i]
        s1 += a[i + 1] * b[i + 1]
        s2 += a[i + 2] * b[i + 2]
        s3 += a[i + 3] * b[i + 3]
        i += 4
    while i < m:
        s0 += a[i] * b[i]
        i += 1
    return (s0 + s1) + (s2 + s3)


def lagged_products(const double[::1] x, const double[::1] y, Py_ssize_t max_lag):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t idx, j
    out = np.zeros(2 * max_lag + 1, dtype=np.float64)
    cdef double[::1] o = out
    if n == 0:
        return out
    for idx in prange(2 * max_lag + 1, nogil=True, schedule="static"):
        j = idx - max_lag
        if j >= 0:
            o[idx] = _dot(&x[0], &y[j], n - j)
        else:
            o[idx] = _dot(&x[-j], &y[0], n + j)
    return out


def autocorrelation(const double[::1] x, Py_ssize_t max_lag):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t k
    out = np.zeros(max_lag + 1, dtype=np.float64)
    cdef double[::1] o = out
    if n == 0:
        return out
    for k in prange(max_lag + 1, nogil=True, schedule="dynamic", chunksize=64):
        o[k] = _dot(&x[0], &x[k], n - k) / n
    return out
