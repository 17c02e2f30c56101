import math

import numpy as np
import pytest
from scipy import stats

from cpnonlocal.source import (
    HBAR,
    PLANCK,
    SourceSpec,
    WindowCounts,
    photon_energy,
    sample_window,
    trial_stream,
)

# h c / 0.8 um with the exact SI constants, evaluated by hand
E_08UM = 2.483057321436161e-19


def test_spec_validation():
    with pytest.raises(ValueError):
        SourceSpec(0.0, 1e-6)
    with pytest.raises(ValueError):
        SourceSpec(1e9, -1e-6)


def test_window_counts_invariants():
    c = WindowCounts(5, 4, 1)
    assert c.delta_n == 3
    with pytest.raises(ValueError):
        WindowCounts(5, 4, 2)


def test_constants():
    assert PLANCK == 6.62607015e-34
    assert HBAR == pytest.approx(1.054571817e-34, rel=1e-9)


@pytest.mark.parametrize("wavelength, factor", [(0.8e-6, 1.0), (1.6e-6, 0.5), (0.4e-6, 2.0)])
def test_photon_energy(wavelength, factor):
    assert photon_energy(SourceSpec(1.0, wavelength)) == pytest.approx(E_08UM * factor, rel=1e-14)


def test_empty_window():
    c = sample_window(SourceSpec(1e9, 0.8e-6), 1e-20, trial_stream(1, 0))
    assert (c.n_pairs, c.delta_n) == (0, 0)


def test_window_must_be_positive():
    with pytest.raises(ValueError):
        sample_window(SourceSpec(1e9, 0.8e-6), 0.0, trial_stream(1, 0))


def test_overflow_rejected():
    with pytest.raises(OverflowError):
        sample_window(SourceSpec(1e30, 0.8e-6), 1.0, trial_stream(1, 0))
    with pytest.raises(OverflowError):
        sample_window(SourceSpec(9.3e18, 0.8e-6), 1.0, trial_stream(1, 0))


def _sample(source, window, n, seed=5):
    return [sample_window(source, window, trial_stream(seed, i)) for i in range(n)]


def test_mean_and_fluctuation_scaling():
    source, window, n = SourceSpec(1e9, 0.8e-6), 3e-4, 10_000
    counts = _sample(source, window, n)
    pairs = np.array([c.n_pairs for c in counts], dtype=float)
    delta = np.array([c.delta_n for c in counts], dtype=float)
    mean = source.pair_rate * window
    assert abs(pairs.mean() - mean) <= 5 * math.sqrt(mean / n)
    ratio = delta.std() / math.sqrt(mean)
    assert 0.9 <= ratio <= 1.1


def _brute_force_delta_distribution(mu, n_max=60):
    """P(L - R = d) for Poisson(mu) pairs each split by a fair coin, by direct summation."""
    table = {}
    for n in range(n_max + 1):
        pn = math.exp(-mu) * mu**n / math.factorial(n)
        for k in range(n + 1):
            d = 2 * k - n
            table[d] = table.get(d, 0.0) + pn * math.comb(n, k) / 2**n
    return table


def test_delta_distribution_matches_enumeration():
    table = _brute_force_delta_distribution(10.0)
    # frozen from the enumeration above
    assert table[0] == pytest.approx(0.127833, abs=1e-6)
    assert table[3] == pytest.approx(0.07983, abs=1e-6)

    n = 20_000
    deltas = np.array([c.delta_n for c in _sample(SourceSpec(10.0, 0.8e-6), 1.0, n, seed=99)])
    edges = list(range(-8, 9))
    observed, expected = [], []
    observed.append(np.sum(deltas < -8))
    expected.append(sum(p for d, p in table.items() if d < -8))
    for d in edges:
        observed.append(np.sum(deltas == d))
        expected.append(table.get(d, 0.0))
    observed.append(np.sum(deltas > 8))
    expected.append(sum(p for d, p in table.items() if d > 8))
    expected = np.array(expected) / sum(expected) * n
    _, p = stats.chisquare(observed, expected)
    assert p > 0.01


def test_streams_are_deterministic_and_distinct():
    source = SourceSpec(1e9, 0.8e-6)
    a = _sample(source, 3e-4, 50, seed=3)
    b = _sample(source, 3e-4, 50, seed=3)
    c = _sample(source, 3e-4, 50, seed=4)
    assert a == b
    assert a != c
    # order of evaluation does not matter
    assert sample_window(source, 3e-4, trial_stream(3, 17)) == a[17]
