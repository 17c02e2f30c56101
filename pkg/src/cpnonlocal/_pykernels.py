"""NumPy implementations of the lag and autocorrelation sums.

Same contracts as the compiled ``_ckernels`` module; used when the
extension is not built.
"""
import numpy as np


def lagged_products(x, y, max_lag):
    """out[j + max_lag] = sum_i x[i] * y[i + j], over indices inside the series."""
    n = x.shape[0]
    out = np.zeros(2 * max_lag + 1, dtype=np.float64)
    for j in range(-max_lag, max_lag + 1):
        if j >= 0:
            out[j + max_lag] = np.dot(x[: n - j], y[j:])
        else:
            out[j + max_lag] = np.dot(x[-j:], y[: n + j])
    return out


def autocorrelation(x, max_lag):
    """Biased estimate r[k] = (1/n) sum_i x[i] x[i + k], k = 0..max_lag."""
    n = x.shape[0]
    out = np.empty(max_lag + 1, dtype=np.float64)
    for k in range(max_lag + 1):
        out[k] = np.dot(x[: n - k], x[k:])
    return out / n
