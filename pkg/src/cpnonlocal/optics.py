"""Amplifier and the two-plate mechanical detector.

Kick convention: a photon of helicity s (+1 for L, -1 for R, 0 for linear)
passing the detector gives plate 1 a kick of +2*hbar*s and plate 2 a kick
of -2*hbar*s. The detector reads the relative momentum
``delta_l = l2 - l1``, so one L photon reads -4*hbar and one R photon +4*hbar.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .source import HBAR, SourceSpec
from .states import CpOutcome, PolarizationState
from .units import ACTION, DENSITY, FREQUENCY, INERTIA, LENGTH, TIME, Quantity

_INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class AmplifierSpec:
    gain: float

    def __post_init__(self):
        if not (self.gain >= 1 and math.isfinite(self.gain)):
            raise ValueError(f"gain must be >= 1, got {self.gain!r}")


@dataclass(frozen=True)
class WavePlateSpec:
    mass_density: float  # kg/m^3
    thickness: float  # m
    radius: float  # m
    birefringence: float

    def __post_init__(self):
        for name in ("mass_density", "thickness", "radius", "birefringence"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be > 0, got {value!r}")

    @classmethod
    def half_wave(cls, wavelength: float, birefringence: float, mass_density: float, radius: float) -> WavePlateSpec:
        """Zero-order half-wave plate, thickness = wavelength / (2 * birefringence)."""
        return cls(mass_density, wavelength / (2.0 * birefringence), radius, birefringence)


@dataclass(frozen=True)
class MechanicalDetectorState:
    plate1_angular_momentum: float = 0.0  # J s
    plate2_angular_momentum: float = 0.0
    plate1_angle: float = 0.0  # rad
    plate2_angle: float = 0.0

    @property
    def delta_l(self) -> float:
        return self.plate2_angular_momentum - self.plate1_angular_momentum

    def angular_velocities(self, plate: WavePlateSpec) -> tuple[float, float]:
        inertia = moment_of_inertia(plate)
        return self.plate1_angular_momentum / inertia, self.plate2_angular_momentum / inertia

    def coast(self, plate: WavePlateSpec, dt: float) -> MechanicalDetectorState:
        """Free rotation for ``dt`` seconds; no friction."""
        w1, w2 = self.angular_velocities(plate)
        return replace(self, plate1_angle=self.plate1_angle + w1 * dt, plate2_angle=self.plate2_angle + w2 * dt)

    @property
    def relative_angle(self) -> float:
        return self.plate2_angle - self.plate1_angle


@dataclass(frozen=True)
class PhotonLedger:
    handedness: CpOutcome
    energy_in: float  # J
    energy_out: float
    exit_handedness: CpOutcome
    pass_shifts: tuple[float, float]  # photon energy change at plate 1, plate 2
    plate_work: tuple[float, float]  # rotational energy gained by each plate


def moment_of_inertia(plate: WavePlateSpec) -> float:
    """(pi/2) rho D r^4 for a thin disk about its axis."""
    return 0.5 * math.pi * plate.mass_density * plate.thickness * plate.radius**4


def moment_of_inertia_q(plate: WavePlateSpec) -> Quantity:
    rho = Quantity(plate.mass_density, DENSITY)
    d = Quantity(plate.thickness, LENGTH)
    r = Quantity(plate.radius, LENGTH)
    return (0.5 * math.pi) * rho * d * r**4


def amplify(left: float, right: float, amp: AmplifierSpec) -> tuple[float, float]:
    """Noiseless gain: every input photon becomes ``gain`` photons of the same handedness."""
    if left < 0 or right < 0:
        raise ValueError("counts must be non-negative")
    out_left = amp.gain * left
    out_right = amp.gain * right
    if max(out_left, out_right) > _INT64_MAX:
        raise OverflowError("amplified photon count exceeds the 64-bit count range")
    return out_left, out_right


def plate_kicks(helicity: float) -> tuple[float, float]:
    """Angular momentum delivered to (plate 1, plate 2) by one photon."""
    return 2.0 * HBAR * helicity, -2.0 * HBAR * helicity


def apply_photon(state: MechanicalDetectorState, photon: PolarizationState) -> MechanicalDetectorState:
    k1, k2 = plate_kicks(photon.helicity)
    return replace(
        state,
        plate1_angular_momentum=state.plate1_angular_momentum + k1,
        plate2_angular_momentum=state.plate2_angular_momentum + k2,
    )


def apply_photon_batch(
    state: MechanicalDetectorState, left_count: float, right_count: float, plate: WavePlateSpec
) -> tuple[MechanicalDetectorState, float]:
    """Apply many photons at once.

    Returns the new state and the change of the relative angular velocity
    ``(delta l2 - delta l1) / I``.
    """
    if left_count < 0 or right_count < 0:
        raise ValueError("counts must be non-negative")
    k1, k2 = plate_kicks(left_count - right_count)
    new = replace(
        state,
        plate1_angular_momentum=state.plate1_angular_momentum + k1,
        plate2_angular_momentum=state.plate2_angular_momentum + k2,
    )
    return new, (k2 - k1) / moment_of_inertia(plate)


def delta_j(source: SourceSpec, amp: AmplifierSpec, window: float) -> float:
    """4 hbar G sqrt(t N): RMS relative momentum change over one window."""
    return 4.0 * HBAR * amp.gain * math.sqrt(window * source.pair_rate)


def detector_slope(amp: AmplifierSpec, plate: WavePlateSpec) -> float:
    """8 hbar G / (pi rho D r^4): rad/s of relative velocity per unit count imbalance."""
    return 8.0 * HBAR * amp.gain / (math.pi * plate.mass_density * plate.thickness * plate.radius**4)


def closed_form_delta_omega(source: SourceSpec, amp: AmplifierSpec, plate: WavePlateSpec, window: float) -> float:
    """RMS relative angular velocity change, using sqrt(t N) as the imbalance."""
    if not window > 0:
        raise ValueError(f"window must be > 0, got {window!r}")
    return delta_j(source, amp, window) / moment_of_inertia(plate)


def closed_form_delta_omega_q(source: SourceSpec, amp: AmplifierSpec, plate: WavePlateSpec, window: float) -> Quantity:
    n_rms = (Quantity(window, TIME) * Quantity(source.pair_rate, FREQUENCY)).sqrt()
    dj = 4.0 * Quantity(HBAR, ACTION) * amp.gain * n_rms
    result = dj / moment_of_inertia_q(plate)
    result.to(FREQUENCY)
    return result


def frequency_shift_ledger(
    handedness: CpOutcome, plate_velocities: tuple[float, float], energy_in: float
) -> PhotonLedger:
    """Track one circular photon's energy through both plates.

    Each plate, turning at its angular velocity before the pass, takes
    ``omega * kick`` of work from the photon (first order in the kick). The
    handedness is restored after the second plate.
    """
    kicks = plate_kicks(handedness.sign)
    work = tuple(w * k for w, k in zip(plate_velocities, kicks))
    shifts = tuple(-x for x in work)
    energy_out = energy_in + shifts[0] + shifts[1]
    return PhotonLedger(
        handedness=handedness,
        energy_in=energy_in,
        energy_out=energy_out,
        exit_handedness=handedness,
        pass_shifts=shifts,
        plate_work=work,
    )
