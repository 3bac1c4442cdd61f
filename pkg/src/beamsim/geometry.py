"""Array geometries, the propagation medium and per-microphone delays.

Microphones are numbered ``k = 1..N`` in every formula below; returned delay
vectors are ordinary 0-based numpy arrays whose entry ``i`` belongs to
microphone ``k = i + 1``.

Angle conventions
-----------------
* Uniform linear array: angles are measured from the array axis, so
  ``theta = pi/2`` is broadside and gives all-zero delays.
* Uniform circular array: microphone ``k`` sits at azimuth ``2*pi*k/N``
  measured in the same frame as ``theta``.

All angles are in radians and are wrapped into ``[0, 2*pi)`` before use.
Delay functions accept a scalar angle (result shape ``(N,)``) or an array of
angles (result shape ``angles.shape + (N,)``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import GeometryMismatchError, InvalidGeometryError

DEFAULT_SOUND_SPEED = 343.0  # m/s, dry air at 20 degC

TWO_PI = 2.0 * math.pi


class ArrayKind(str, enum.Enum):
    LINEAR = "linear"
    CIRCULAR = "circular"


@dataclass(frozen=True)
class Medium:
    """Homogeneous propagation medium."""

    sound_speed: float = DEFAULT_SOUND_SPEED

    def __post_init__(self):
        if not (math.isfinite(self.sound_speed) and self.sound_speed > 0):
            raise InvalidGeometryError(
                f"sound_speed must be positive, got {self.sound_speed!r}")


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform linear or uniform circular microphone array.

    Only one length is stored: ``spacing`` for linear arrays, ``radius`` for
    circular ones. The other is derived on access through
    ``spacing = 2 * radius * sin(pi / N)``.

    Use the :meth:`linear`, :meth:`circular` and :meth:`circular_from_spacing`
    constructors rather than calling the class directly.
    """

    kind: ArrayKind
    mic_count: int
    length: float

    def __post_init__(self):
        object.__setattr__(self, "kind", ArrayKind(self.kind))
        if int(self.mic_count) != self.mic_count or self.mic_count < 2:
            raise InvalidGeometryError(
                f"mic_count must be an integer >= 2, got {self.mic_count!r}")
        object.__setattr__(self, "mic_count", int(self.mic_count))
        if not (math.isfinite(self.length) and self.length > 0):
            what = "spacing" if self.kind is ArrayKind.LINEAR else "radius"
            raise InvalidGeometryError(
                f"{what} must be positive, got {self.length!r}")
        object.__setattr__(self, "length", float(self.length))

    @classmethod
    def linear(cls, mic_count: int, spacing: float) -> "ArrayGeometry":
        return cls(ArrayKind.LINEAR, mic_count, spacing)

    @classmethod
    def circular(cls, mic_count: int, radius: float) -> "ArrayGeometry":
        return cls(ArrayKind.CIRCULAR, mic_count, radius)

    @classmethod
    def circular_from_spacing(cls, mic_count: int,
                              spacing: float) -> "ArrayGeometry":
        return cls(ArrayKind.CIRCULAR, mic_count,
                   spacing_to_radius(spacing, mic_count))

    @property
    def is_linear(self) -> bool:
        return self.kind is ArrayKind.LINEAR

    @property
    def spacing(self) -> float:
        """Distance between adjacent microphones in meters."""
        if self.is_linear:
            return self.length
        return radius_to_spacing(self.length, self.mic_count)

    @property
    def radius(self) -> float | None:
        """Circle radius in meters, ``None`` for linear arrays."""
        return None if self.is_linear else self.length

    @property
    def aperture(self) -> float:
        """Physical extent: ``(N-1)*d`` (linear) or ``2*r`` (circular)."""
        if self.is_linear:
            return (self.mic_count - 1) * self.length
        return 2.0 * self.length

    def max_delay(self, medium: Medium = Medium()) -> float:
        """Upper bound on ``|delay|`` for any angle, ``aperture / (2c)``."""
        return self.aperture / (2.0 * medium.sound_speed)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "mic_count": self.mic_count,
            "spacing_m": self.spacing,
            "radius_m": self.radius,
        }


def spacing_to_radius(spacing: float, mic_count: int) -> float:
    """Radius of the circle whose inscribed regular N-gon has side `spacing`."""
    if int(mic_count) != mic_count or mic_count < 2:
        raise InvalidGeometryError(
            f"mic_count must be an integer >= 2, got {mic_count!r}")
    if not (math.isfinite(spacing) and spacing > 0):
        raise InvalidGeometryError(f"spacing must be positive, got {spacing!r}")
    return spacing / (2.0 * math.sin(math.pi / mic_count))


def radius_to_spacing(radius: float, mic_count: int) -> float:
    if int(mic_count) != mic_count or mic_count < 2:
        raise InvalidGeometryError(
            f"mic_count must be an integer >= 2, got {mic_count!r}")
    return 2.0 * radius * math.sin(math.pi / mic_count)


def wrap_angle(angle):
    """Wrap an angle (scalar or array, radians) into ``[0, 2*pi)``."""
    wrapped = np.mod(angle, TWO_PI)
    # np.mod returns exactly 2*pi for tiny negative inputs
    wrapped = np.where(wrapped >= TWO_PI, 0.0, wrapped)
    return float(wrapped) if np.ndim(angle) == 0 else wrapped


def _mic_index(geom: ArrayGeometry) -> np.ndarray:
    return np.arange(1, geom.mic_count + 1, dtype=float)


def _require(geom: ArrayGeometry, kind: ArrayKind):
    if geom.kind is not kind:
        raise GeometryMismatchError(
            f"expected a {kind.value} array, got {geom.kind.value}")


def linear_physical_delays(geom: ArrayGeometry, theta: float,
                           medium: Medium = Medium()) -> np.ndarray:
    """Arrival delays ``(d/c) * (k - (N+1)/2) * cos(theta)`` in seconds."""
    _require(geom, ArrayKind.LINEAR)
    centered = _mic_index(geom) - (geom.mic_count + 1) / 2.0
    cos_theta = np.cos(np.asarray(wrap_angle(theta)))[..., np.newaxis]
    return (geom.spacing / medium.sound_speed) * centered * cos_theta


def linear_steering_delays(geom: ArrayGeometry, phi: float,
                           medium: Medium = Medium()) -> np.ndarray:
    """Digital delays that point a linear array at `phi`.

    Same expression as :func:`linear_physical_delays`, evaluated at the
    steering angle.
    """
    return linear_physical_delays(geom, phi, medium)


def circular_physical_delays(geom: ArrayGeometry, theta: float,
                             medium: Medium = Medium()) -> np.ndarray:
    """Arrival delays ``(r/c) * cos(theta - 2*pi*k/N)`` in seconds."""
    _require(geom, ArrayKind.CIRCULAR)
    mic_azimuth = _mic_index(geom) * TWO_PI / geom.mic_count
    theta = np.asarray(wrap_angle(theta))[..., np.newaxis]
    return (geom.length / medium.sound_speed) * np.cos(theta - mic_azimuth)


def circular_steering_delays(geom: ArrayGeometry, phi: float,
                             medium: Medium = Medium()) -> np.ndarray:
    return circular_physical_delays(geom, phi, medium)


def physical_delays(geom: ArrayGeometry, theta: float,
                    medium: Medium = Medium()) -> np.ndarray:
    """Dispatch to the linear or circular arrival-delay formula."""
    if geom.is_linear:
        return linear_physical_delays(geom, theta, medium)
    return circular_physical_delays(geom, theta, medium)


def steering_delays(geom: ArrayGeometry, phi: float,
                    medium: Medium = Medium()) -> np.ndarray:
    if geom.is_linear:
        return linear_steering_delays(geom, phi, medium)
    return circular_steering_delays(geom, phi, medium)
