"""Backend selection for the hot loops.

The compiled extension is used when it was built; otherwise the NumPy
versions are used. ``use_backend`` switches explicitly (tests, benchmarks).
"""
from __future__ import annotations

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_active = _ckernels if _ckernels is not None else _pykernels


def available_backends() -> list[str]:
    return ["python"] + (["compiled"] if _ckernels is not None else [])


def backend() -> str:
    return "compiled" if _active is _ckernels and _ckernels is not None else "python"


def use_backend(name: str) -> None:
    global _active
    if name == "python":
        _active = _pykernels
    elif name == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built; run `pip install -e .`")
        _active = _ckernels
    else:
        raise ValueError(f"unknown backend {name!r}")


def lagged_products(x, y, max_lag: int) -> np.ndarray:
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("channels must be 1-D and of equal length")
    if not 0 <= max_lag < x.shape[0]:
        raise ValueError(f"max_lag must lie in [0, {x.shape[0]}), got {max_lag}")
    return _active.lagged_products(x, y, int(max_lag))


def autocorrelation(x, max_lag: int | None = None) -> np.ndarray:
    x = np.ascontiguousarray(x, dtype=np.float64)
    n = x.shape[0]
    if max_lag is None:
        max_lag = n - 1
    if not 0 <= max_lag < n:
        raise ValueError(f"max_lag must lie in [0, {n}), got {max_lag}")
    return _active.autocorrelation(x, int(max_lag))
