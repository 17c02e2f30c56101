"""Correlation and noise-spectrum statistics over a trial series.

Every statistic here is a ratio of norms, so scaling either channel by a
positive constant leaves it unchanged. The correlations are taken without
mean subtraction (cosine similarity); ``correlation_pearson`` is the
mean-subtracted variant for data carrying offsets.

Channels are Bob's relative angular velocity change (``omega``) and Alice's
L-R count imbalance (``dn``).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import UndefinedCorrelationError
from .experiment import TrialSeries

MIN_SPECTRUM_LENGTH = 16


def channels(series) -> tuple[np.ndarray, np.ndarray]:
    """(omega, dn) arrays from a TrialSeries or an ``(omega, dn)`` pair."""
    if isinstance(series, TrialSeries):
        omega, dn = series.delta_omega_p, series.delta_n_gamma
    else:
        omega, dn = series
    omega = np.asarray(omega, dtype=np.float64)
    dn = np.asarray(dn, dtype=np.float64)
    if omega.ndim != 1 or omega.shape != dn.shape:
        raise ValueError("channels must be 1-D arrays of equal length")
    return omega, dn


def _norms(omega: np.ndarray, dn: np.ndarray) -> tuple[float, float]:
    n_omega = float(np.sqrt(np.dot(omega, omega)))
    n_dn = float(np.sqrt(np.dot(dn, dn)))
    if n_omega == 0.0 or n_dn == 0.0:
        raise UndefinedCorrelationError("correlation undefined: a channel is identically zero")
    return n_omega, n_dn


def correlation_cp(series) -> float:
    omega, dn = channels(series)
    if omega.shape[0] < 2:
        raise ValueError("need at least two records")
    n_omega, n_dn = _norms(omega, dn)
    return float(np.dot(omega, dn)) / (n_omega * n_dn)


def correlation_pearson(series) -> float:
    """Mean-subtracted correlation coefficient."""
    omega, dn = channels(series)
    return correlation_cp((omega - omega.mean(), dn - dn.mean()))


@dataclass(frozen=True)
class CorrelationResult:
    c_p: float
    lag_profile: dict[int, float]  # j -> C_+(j)
    max_lag: int

    def c_plus(self, j: int) -> float:
        """sum_i omega(i) dn(i + j), normalized."""
        return self.lag_profile[j]

    def c_minus(self, j: int) -> float:
        """sum_i omega(i) dn(i - j), normalized."""
        return self.lag_profile[-j]

    def peak_lag(self) -> int:
        """Lag j maximizing C_-(j), i.e. omega(i) best matching dn(i - j)."""
        return max(self.lag_profile, key=lambda j: self.c_minus(j))


def correlation_lagged(series, max_lag: int) -> CorrelationResult:
    """Lagged correlation over j in [-max_lag, max_lag].

    Index pairs falling outside the series are dropped; both denominators are
    the full-series norms.
    """
    omega, dn = channels(series)
    if omega.shape[0] < 2:
        raise ValueError("need at least two records")
    if not 0 <= max_lag < omega.shape[0]:
        raise ValueError(f"max_lag must lie in [0, {omega.shape[0]}), got {max_lag}")
    n_omega, n_dn = _norms(omega, dn)
    sums = kernels.lagged_products(omega, dn, max_lag)
    values = sums / (n_omega * n_dn)
    profile = {j: float(values[j + max_lag]) for j in range(-max_lag, max_lag + 1)}
    return CorrelationResult(correlation_cp((omega, dn)), profile, max_lag)


def normalized_differences(series) -> tuple[np.ndarray, np.ndarray]:
    """(Delta_plus, Delta_minus): unit-norm channels added and subtracted."""
    omega, dn = channels(series)
    n_omega, n_dn = _norms(omega, dn)
    a = omega / n_omega
    b = dn / n_dn
    return a + b, a - b


@dataclass(frozen=True)
class SpectraResult:
    """Two-sided spectra on a common angular-frequency grid (rad/s, ascending).

    Fourier convention: chi(w) = integral dtau exp(i w tau) R(tau), hence
    R(0) = (1 / 2 pi) * integral chi(w) dw.
    """

    frequencies: np.ndarray
    chi_s: np.ndarray  # difference channel
    chi_a: np.ndarray  # sum channel
    autocorr_s: np.ndarray  # biased autocorrelation, lags 0..n-1
    autocorr_a: np.ndarray

    @property
    def spacing(self) -> float:
        return float(self.frequencies[1] - self.frequencies[0])

    def integrated(self) -> tuple[float, float]:
        """(1/2pi) sum chi dw for each channel; equals the zero-lag autocorrelation."""
        scale = self.spacing / (2.0 * np.pi)
        return float(self.chi_s.sum() * scale), float(self.chi_a.sum() * scale)

    def ratio(self) -> float:
        s, a = self.integrated()
        return s / a


def _taper(x: np.ndarray, window: str) -> np.ndarray:
    if window == "rect":
        return x
    if window == "hann":
        w = np.hanning(x.shape[0])
        # keep mean power so integrated spectra stay comparable
        return x * w / np.sqrt(np.mean(w**2))
    raise ValueError(f"unknown window {window!r}")


def _grid_size(n: int) -> int:
    # at least 2n - 1 points so the circular transform of the lag sequence is exact
    size = 1
    while size < 2 * n - 1:
        size *= 2
    return size


def spectrum_from_autocorrelation(r: np.ndarray, interval: float, size: int) -> np.ndarray:
    """interval * sum_k r(|k|) exp(i w k interval) on the fftfreq grid (unshifted)."""
    seq = np.zeros(size)
    n = r.shape[0]
    seq[:n] = r
    seq[size - n + 1 :] = r[1:][::-1]
    return interval * np.fft.fft(seq).real


def noise_spectra(series, trial_interval: float, window: str = "rect") -> SpectraResult:
    """Spectra of the sum and difference channels sampled every ``trial_interval`` s."""
    if not trial_interval > 0:
        raise ValueError("trial_interval must be > 0")
    plus, minus = normalized_differences(series)
    n = plus.shape[0]
    if n < MIN_SPECTRUM_LENGTH:
        raise ValueError(f"series too short for a spectrum: {n} < {MIN_SPECTRUM_LENGTH}")
    r_s = kernels.autocorrelation(_taper(minus, window))
    r_a = kernels.autocorrelation(_taper(plus, window))
    size = _grid_size(n)
    freqs = np.fft.fftshift(np.fft.fftfreq(size, d=trial_interval)) * 2.0 * np.pi
    chi_s = np.fft.fftshift(spectrum_from_autocorrelation(r_s, trial_interval, size))
    chi_a = np.fft.fftshift(spectrum_from_autocorrelation(r_a, trial_interval, size))
    return SpectraResult(freqs, chi_s, chi_a, r_s, r_a)
