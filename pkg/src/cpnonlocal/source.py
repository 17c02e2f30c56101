"""Photon-pair source: per-window pair counts and Alice's circular imbalance.

Physical constants are the exact SI (CODATA 2018) values and live here only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

PLANCK = 6.62607015e-34  # J s
HBAR = PLANCK / (2.0 * math.pi)
SPEED_OF_LIGHT = 299792458.0  # m/s

_INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class SourceSpec:
    pair_rate: float  # pairs / s
    wavelength: float  # m

    def __post_init__(self):
        if not (self.pair_rate > 0 and math.isfinite(self.pair_rate)):
            raise ValueError(f"pair_rate must be > 0, got {self.pair_rate!r}")
        if not (self.wavelength > 0 and math.isfinite(self.wavelength)):
            raise ValueError(f"wavelength must be > 0, got {self.wavelength!r}")


@dataclass(frozen=True)
class WindowCounts:
    n_pairs: int
    alice_left: int
    alice_right: int

    def __post_init__(self):
        if min(self.n_pairs, self.alice_left, self.alice_right) < 0:
            raise ValueError("counts must be non-negative")
        if self.alice_left + self.alice_right != self.n_pairs:
            raise ValueError("alice_left + alice_right must equal n_pairs")

    @property
    def delta_n(self) -> int:
        """Left minus right."""
        return self.alice_left - self.alice_right


def trial_stream(seed: int, index: int) -> np.random.Generator:
    """Independent counter-based stream for window ``index`` of run ``seed``.

    Streams depend only on (seed, index), so windows can be sampled in any
    order or concurrently.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


def sample_window(source: SourceSpec, window: float, rng: np.random.Generator) -> WindowCounts:
    """Poisson pair count, each pair split L/R with probability 1/2."""
    if not window > 0:
        raise ValueError(f"window must be > 0, got {window!r}")
    mean = source.pair_rate * window
    if mean > _INT64_MAX:
        raise OverflowError(f"mean pair count {mean:.3e} exceeds the 64-bit count range")
    try:
        n = int(rng.poisson(mean))
    except ValueError as exc:  # numpy's own ceiling sits just below 2**63
        raise OverflowError(str(exc)) from exc
    left = int(rng.binomial(n, 0.5))
    return WindowCounts(n, left, n - left)


def photon_energy(source: SourceSpec) -> float:
    """h c / lambda in joules."""
    return PLANCK * SPEED_OF_LIGHT / source.wavelength
