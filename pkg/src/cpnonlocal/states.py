"""Single-photon polarization states and the two-photon Bell pair.

Amplitudes are stored over the linear basis {H, V}; the circular states are

    L = (H - iV) / sqrt(2)
    R = (H + iV) / sqrt(2)

A two-photon state is four amplitudes over {HH, HV, VH, VV} (photon 1 first).
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import StateValidationError

TOL = 1e-12
_S2 = 1.0 / math.sqrt(2.0)


def _check_norm(norm2: float, what: str) -> None:
    if not math.isfinite(norm2) or abs(norm2 - 1.0) > TOL:
        raise StateValidationError(f"{what} not normalized (|psi|^2 = {norm2!r})")


@dataclass(frozen=True)
class PolarizationState:
    amp_h: complex
    amp_v: complex

    def __post_init__(self):
        object.__setattr__(self, "amp_h", complex(self.amp_h))
        object.__setattr__(self, "amp_v", complex(self.amp_v))
        _check_norm(abs(self.amp_h) ** 2 + abs(self.amp_v) ** 2, "polarization state")

    @classmethod
    def H(cls) -> PolarizationState:
        return cls(1.0, 0.0)

    @classmethod
    def V(cls) -> PolarizationState:
        return cls(0.0, 1.0)

    @classmethod
    def L(cls) -> PolarizationState:
        return cls(_S2, -1j * _S2)

    @classmethod
    def R(cls) -> PolarizationState:
        return cls(_S2, 1j * _S2)

    @classmethod
    def normalized(cls, amp_h: complex, amp_v: complex) -> PolarizationState:
        norm = math.sqrt(abs(amp_h) ** 2 + abs(amp_v) ** 2)
        if norm == 0.0:
            raise StateValidationError("zero vector is not a state")
        return cls(amp_h / norm, amp_v / norm)

    def canonical_phase(self) -> tuple[complex, complex]:
        """Amplitudes with the global phase removed.

        The phase is fixed by making ``amp_h`` real and non-negative, or
        ``amp_v`` when ``amp_h`` vanishes.
        """
        ref = self.amp_h if abs(self.amp_h) > TOL else self.amp_v
        phase = cmath.exp(-1j * cmath.phase(ref))
        return self.amp_h * phase, self.amp_v * phase

    def same_as(self, other: PolarizationState, tol: float = TOL) -> bool:
        a = self.canonical_phase()
        b = other.canonical_phase()
        return abs(a[0] - b[0]) <= tol and abs(a[1] - b[1]) <= tol

    @property
    def helicity(self) -> float:
        """|a_L|^2 - |a_R|^2: +1 for L, -1 for R, 0 for any linear state."""
        a_l, a_r = _lp_to_cp_raw(self.amp_h, self.amp_v)
        return abs(a_l) ** 2 - abs(a_r) ** 2


class CpOutcome(enum.Enum):
    LEFT = "L"
    RIGHT = "R"

    def state(self) -> PolarizationState:
        return PolarizationState.L() if self is CpOutcome.LEFT else PolarizationState.R()

    def opposite(self) -> CpOutcome:
        return CpOutcome.RIGHT if self is CpOutcome.LEFT else CpOutcome.LEFT

    @property
    def sign(self) -> int:
        return 1 if self is CpOutcome.LEFT else -1


def _lp_to_cp_raw(h: complex, v: complex) -> tuple[complex, complex]:
    # <L|s> and <R|s>
    return _S2 * (h + 1j * v), _S2 * (h - 1j * v)


def lp_to_cp(state: PolarizationState) -> tuple[complex, complex]:
    """Return ``(a_L, a_R)`` with ``state = a_L * L + a_R * R``."""
    return _lp_to_cp_raw(state.amp_h, state.amp_v)


def cp_to_lp(a_l: complex, a_r: complex) -> PolarizationState:
    _check_norm(abs(a_l) ** 2 + abs(a_r) ** 2, "circular amplitudes")
    return PolarizationState(_S2 * (a_l + a_r), -1j * _S2 * (a_l - a_r))


# rows: <L|, <R|; columns: |H>, |V>
_TO_CP = np.array([[_S2, 1j * _S2], [_S2, -1j * _S2]])


@dataclass(frozen=True)
class BellPair:
    """Two-photon polarization state, amplitudes over (HH, HV, VH, VV)."""

    coefficients: tuple[complex, complex, complex, complex]

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        if len(coeffs) != 4:
            raise StateValidationError("a photon pair needs exactly four amplitudes")
        object.__setattr__(self, "coefficients", coeffs)
        _check_norm(sum(abs(c) ** 2 for c in coeffs), "photon pair")

    @classmethod
    def canonical(cls) -> BellPair:
        """(HH + VV) / sqrt(2)."""
        return cls((_S2, 0.0, 0.0, _S2))

    @classmethod
    def product(cls, first: PolarizationState, second: PolarizationState) -> BellPair:
        a = (first.amp_h, first.amp_v)
        b = (second.amp_h, second.amp_v)
        return cls((a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]))

    def matrix(self) -> np.ndarray:
        return np.array(self.coefficients, dtype=complex).reshape(2, 2)


def decompose_bell_in_cp(pair: BellPair) -> tuple[complex, complex, complex, complex]:
    """Amplitudes of ``pair`` over (LL, LR, RL, RR)."""
    cp = _TO_CP @ pair.matrix() @ _TO_CP.T
    return tuple(complex(c) for c in cp.reshape(4))


def project_alice_cp(pair: BellPair, random_draw: float) -> tuple[CpOutcome, PolarizationState]:
    """Measure photon 1 in the circular basis and collapse photon 2.

    ``random_draw`` in [0, 1) selects LEFT when it is below P(L).
    """
    if not 0.0 <= random_draw < 1.0:
        raise ValueError(f"random_draw must lie in [0, 1), got {random_draw!r}")
    ll, lr, rl, rr = decompose_bell_in_cp(pair)
    p_left = abs(ll) ** 2 + abs(lr) ** 2
    # snap rounding residue so certain outcomes stay certain
    if p_left > 1.0 - TOL:
        p_left = 1.0
    elif p_left < TOL:
        p_left = 0.0
    if random_draw < p_left:
        outcome, a_l, a_r = CpOutcome.LEFT, ll, lr
    else:
        outcome, a_l, a_r = CpOutcome.RIGHT, rl, rr
    norm = math.sqrt(abs(a_l) ** 2 + abs(a_r) ** 2)
    if norm == 0.0:
        raise StateValidationError("selected branch has zero amplitude")
    return outcome, cp_to_lp(a_l / norm, a_r / norm)


def cp_outcome_of(state: PolarizationState, tol: float = 1e-9) -> CpOutcome | None:
    """The circular eigenstate ``state`` equals, or None."""
    h = state.helicity
    if abs(h - 1.0) <= tol:
        return CpOutcome.LEFT
    if abs(h + 1.0) <= tol:
        return CpOutcome.RIGHT
    return None
