import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cpnonlocal.optics import (
    AmplifierSpec,
    MechanicalDetectorState,
    WavePlateSpec,
    amplify,
    apply_photon,
    apply_photon_batch,
    closed_form_delta_omega,
    closed_form_delta_omega_q,
    detector_slope,
    frequency_shift_ledger,
    moment_of_inertia,
)
from cpnonlocal.source import HBAR, SourceSpec
from cpnonlocal.states import CpOutcome, PolarizationState
from cpnonlocal.units import FREQUENCY

# (pi/2) * 3e3 * 4.5e-6 * (5e-5)**4 by hand
I_DESIGN = 1.3253594007331943e-19
# 4 hbar 1e6 sqrt(3e5) / I_DESIGN by hand
DOMEGA_DESIGN = 1.7432638202573182e-06

PLATE = WavePlateSpec(3e3, 4.5e-6, 50e-6, 0.8e-6 / 9e-6)
SOURCE = SourceSpec(1e9, 0.8e-6)
AMP = AmplifierSpec(1e6)


def test_specs_validate():
    with pytest.raises(ValueError):
        AmplifierSpec(0.5)
    with pytest.raises(ValueError):
        WavePlateSpec(3e3, 0.0, 50e-6, 0.09)


def test_half_wave_constructor():
    p = WavePlateSpec.half_wave(0.8e-6, 0.8e-6 / 9e-6, 3e3, 50e-6)
    assert p.thickness == pytest.approx(4.5e-6, rel=1e-12)


def test_moment_of_inertia():
    assert moment_of_inertia(PLATE) == pytest.approx(I_DESIGN, rel=1e-14)
    bigger = WavePlateSpec(3e3, 4.5e-6, 100e-6, 0.09)
    thicker = WavePlateSpec(3e3, 9e-6, 50e-6, 0.09)
    assert moment_of_inertia(bigger) == pytest.approx(16 * I_DESIGN, rel=1e-14)
    assert moment_of_inertia(thicker) == pytest.approx(2 * I_DESIGN, rel=1e-14)


def test_amplify():
    assert amplify(3, 1, AMP) == (3e6, 1e6)
    assert amplify(7, 2, AmplifierSpec(1.0)) == (7, 2)
    with pytest.raises(OverflowError):
        amplify(10**13, 0, AMP)


@given(st.integers(0, 10**6), st.integers(0, 10**6), st.floats(1.0, 1e6))
def test_amplify_is_linear(left, right, gain):
    out_l, out_r = amplify(left, right, AmplifierSpec(gain))
    assert out_l - out_r == pytest.approx(gain * (left - right), rel=1e-12, abs=1e-6)


def test_single_left_photon_kicks():
    state, _ = apply_photon_batch(MechanicalDetectorState(), 1, 0, PLATE)
    assert state.plate1_angular_momentum == pytest.approx(2 * HBAR, rel=1e-15)
    assert state.plate2_angular_momentum == pytest.approx(-2 * HBAR, rel=1e-15)
    assert abs(state.delta_l) == pytest.approx(4 * HBAR, rel=1e-15)


def test_single_photon_velocity_change():
    # each plate changes by 2 hbar / I
    state, _ = apply_photon_batch(MechanicalDetectorState(), 0, 1, PLATE)
    w1, w2 = state.angular_velocities(PLATE)
    assert w1 == pytest.approx(-2 * HBAR / I_DESIGN, rel=1e-14)
    assert w2 == pytest.approx(2 * HBAR / I_DESIGN, rel=1e-14)


def test_equal_counts_cancel():
    state, d_omega = apply_photon_batch(MechanicalDetectorState(), 5e11, 5e11, PLATE)
    assert d_omega == 0.0
    assert state.delta_l == 0.0


def test_design_batch_magnitude():
    imbalance = AMP.gain * math.sqrt(3e-4 * SOURCE.pair_rate)
    _, d_omega = apply_photon_batch(MechanicalDetectorState(), 0.0, imbalance, PLATE)
    assert d_omega == pytest.approx(DOMEGA_DESIGN, rel=1e-12)
    assert 1.6e-6 <= d_omega <= 2.0e-6


@given(st.integers(0, 10**9), st.integers(0, 10**9))
def test_plates_antisymmetric(left, right):
    state, _ = apply_photon_batch(MechanicalDetectorState(), left, right, PLATE)
    assert state.plate1_angular_momentum + state.plate2_angular_momentum == 0.0
    assert state.delta_l == 2 * state.plate2_angular_momentum


def test_linear_photons_impart_nothing():
    state = MechanicalDetectorState()
    for photon in (PolarizationState.H(), PolarizationState.V()):
        state = apply_photon(state, photon)
    assert abs(state.plate1_angular_momentum) < 1e-12 * HBAR
    assert abs(state.plate2_angular_momentum) < 1e-12 * HBAR
    kicked = apply_photon(MechanicalDetectorState(), PolarizationState.L())
    assert kicked.plate1_angular_momentum == pytest.approx(2 * HBAR, rel=1e-12)


def test_closed_form():
    assert closed_form_delta_omega(SOURCE, AMP, PLATE, 3e-4) == pytest.approx(DOMEGA_DESIGN, rel=1e-14)
    assert closed_form_delta_omega(SOURCE, AmplifierSpec(2e6), PLATE, 3e-4) == pytest.approx(2 * DOMEGA_DESIGN, rel=1e-14)
    assert closed_form_delta_omega(SOURCE, AMP, PLATE, 12e-4) == pytest.approx(2 * DOMEGA_DESIGN, rel=1e-14)


def test_closed_form_matches_slope_form():
    slope = detector_slope(AMP, PLATE)
    assert slope * math.sqrt(3e-4 * 1e9) == pytest.approx(closed_form_delta_omega(SOURCE, AMP, PLATE, 3e-4), rel=1e-14)


def test_composition_identity():
    imbalance = AMP.gain * math.sqrt(3e-4 * SOURCE.pair_rate)
    _, d_omega = apply_photon_batch(MechanicalDetectorState(), 0.0, imbalance, PLATE)
    assert d_omega == closed_form_delta_omega(SOURCE, AMP, PLATE, 3e-4)


def test_dimensions():
    q = closed_form_delta_omega_q(SOURCE, AMP, PLATE, 3e-4)
    assert q.dim == FREQUENCY
    assert q.value == pytest.approx(DOMEGA_DESIGN, rel=1e-14)


def test_ledger_stationary_plates():
    for h in CpOutcome:
        ledger = frequency_shift_ledger(h, (0.0, 0.0), 2.48e-19)
        assert ledger.energy_out == ledger.energy_in
        assert ledger.exit_handedness is h


@given(
    st.sampled_from(list(CpOutcome)),
    st.floats(-1e3, 1e3, allow_nan=False),
    st.floats(-1e3, 1e3, allow_nan=False),
)
def test_ledger_handedness_and_conservation(h, w1, w2):
    e_in = 2.48e-19
    ledger = frequency_shift_ledger(h, (w1, w2), e_in)
    assert ledger.exit_handedness is ledger.handedness
    total = ledger.energy_out + sum(ledger.plate_work)
    assert abs(total - e_in) <= 1e-9 * e_in


def test_ledger_opposite_shift_signs():
    # left photon: plate 1 gains +2 hbar, plate 2 gains -2 hbar, so with both
    # plates turning forward the photon loses energy at 1 and gains it at 2
    ledger = frequency_shift_ledger(CpOutcome.LEFT, (3.0, 3.0), 2.48e-19)
    s1, s2 = ledger.pass_shifts
    assert s1 == pytest.approx(-2 * HBAR * 3.0)
    assert s2 == pytest.approx(2 * HBAR * 3.0)
    unequal = frequency_shift_ledger(CpOutcome.LEFT, (3.0, 1.0), 2.48e-19)
    assert unequal.energy_out != unequal.energy_in


def test_coast_integrates_angle():
    state, _ = apply_photon_batch(MechanicalDetectorState(), 0, 1e6, PLATE)
    w1, w2 = state.angular_velocities(PLATE)
    later = state.coast(PLATE, 100.0)
    assert later.relative_angle == pytest.approx((w2 - w1) * 100.0, rel=1e-14)
