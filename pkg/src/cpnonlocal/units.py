"""Minimal dimension-tracked quantities.

Only the SI base dimensions that appear in the detector model are tracked
(mass, length, time). Angles are dimensionless.
"""
from __future__ import annotations

from dataclasses import dataclass

_NAMES = ("kg", "m", "s")


@dataclass(frozen=True)
class Dim:
    mass: int = 0
    length: int = 0
    time: int = 0

    def __mul__(self, other: Dim) -> Dim:
        return Dim(self.mass + other.mass, self.length + other.length, self.time + other.time)

    def __truediv__(self, other: Dim) -> Dim:
        return Dim(self.mass - other.mass, self.length - other.length, self.time - other.time)

    def __pow__(self, n: int) -> Dim:
        return Dim(self.mass * n, self.length * n, self.time * n)

    def __str__(self) -> str:
        parts = []
        for name, exp in zip(_NAMES, (self.mass, self.length, self.time)):
            if exp == 1:
                parts.append(name)
            elif exp:
                parts.append(f"{name}^{exp}")
        return "*".join(parts) or "1"


DIMENSIONLESS = Dim()
MASS = Dim(mass=1)
LENGTH = Dim(length=1)
TIME = Dim(time=1)
FREQUENCY = TIME**-1
ENERGY = MASS * LENGTH**2 / TIME**2
ACTION = ENERGY * TIME
POWER = ENERGY / TIME
DENSITY = MASS / LENGTH**3
INERTIA = MASS * LENGTH**2


class DimensionError(TypeError):
    pass


@dataclass(frozen=True)
class Quantity:
    value: float
    dim: Dim = DIMENSIONLESS

    def _coerce(self, other) -> Quantity:
        if isinstance(other, Quantity):
            return other
        return Quantity(float(other), DIMENSIONLESS)

    def __add__(self, other) -> Quantity:
        other = self._coerce(other)
        if other.dim != self.dim:
            raise DimensionError(f"cannot add {self.dim} and {other.dim}")
        return Quantity(self.value + other.value, self.dim)

    def __sub__(self, other) -> Quantity:
        return self + (-1.0 * self._coerce(other))

    def __mul__(self, other) -> Quantity:
        other = self._coerce(other)
        return Quantity(self.value * other.value, self.dim * other.dim)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Quantity:
        other = self._coerce(other)
        return Quantity(self.value / other.value, self.dim / other.dim)

    def __rtruediv__(self, other) -> Quantity:
        return self._coerce(other) / self

    def __pow__(self, n: int) -> Quantity:
        return Quantity(self.value**n, self.dim**n)

    def sqrt(self) -> Quantity:
        for exp in (self.dim.mass, self.dim.length, self.dim.time):
            if exp % 2:
                raise DimensionError(f"odd power in sqrt of {self.dim}")
        half = Dim(self.dim.mass // 2, self.dim.length // 2, self.dim.time // 2)
        return Quantity(self.value**0.5, half)

    def to(self, dim: Dim) -> float:
        """Return the bare value after asserting the expected dimension."""
        if dim != self.dim:
            raise DimensionError(f"expected {dim}, got {self.dim}")
        return self.value

    def __float__(self) -> float:
        return float(self.value)
