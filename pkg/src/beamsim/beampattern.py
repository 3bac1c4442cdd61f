"""Analytic delay-and-sum response over frequency and arrival angle.

The beamformer transfer function for steering angle ``phi`` is

    H(omega, theta) = (1/N) * sum_k exp(-1j * omega * (Delta_k - delta_k))

with ``Delta_k`` the arrival delays for direction ``theta`` and ``delta_k``
the steering delays for ``phi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .exceptions import ParameterError, RangeError
from .geometry import (
    TWO_PI, ArrayGeometry, Medium, physical_delays, steering_delays,
    wrap_angle,
)

DB_FLOOR_MAGNITUDE = 1e-10
DEFAULT_F_MIN = 300.0
DEFAULT_F_MAX = 4000.0
DEFAULT_F_STEP = 10.0
DEFAULT_ANGLE_STEP = math.radians(1.0)

# Grid angles closer than this to the steering angle are snapped onto it.
_SNAP_TOLERANCE = 1e-9
# Adjacent magnitudes closer than this count as one plateau in find_lobes.
_PLATEAU_TOLERANCE = 1e-12


def transfer_function(geom: ArrayGeometry, phi: float, theta, omega,
                      medium: Medium = Medium()):
    """Evaluate the delay-and-sum transfer function.

    Parameters
    ----------
    geom : ArrayGeometry
    phi : float
        Steering angle in radians.
    theta : float or array_like
        Arrival angle(s) in radians.
    omega : float or array_like
        Angular frequency in rad/s; must broadcast against `theta`.
        Negative values are accepted and return the complex conjugate.
    medium : Medium

    Returns
    -------
    complex or ndarray of complex
    """
    arrival = physical_delays(geom, theta, medium)
    steer = steering_delays(geom, phi, medium)
    diff = arrival - steer
    omega = np.asarray(omega, dtype=float)
    acc = np.zeros(np.broadcast_shapes(omega.shape, diff.shape[:-1]),
                   dtype=complex)
    # fixed k-order accumulation keeps results schedule-independent
    for k in range(geom.mic_count):
        acc += np.exp(-1j * omega * diff[..., k])
    acc /= geom.mic_count
    return complex(acc) if acc.ndim == 0 else acc


def magnitude_to_db(magnitude):
    """``20*log10(|H|)`` with ``|H|`` floored at 1e-10."""
    return 20.0 * np.log10(np.maximum(np.abs(magnitude), DB_FLOOR_MAGNITUDE))


@dataclass(frozen=True)
class BeamPatternGrid:
    """Complex response sampled on a frequency x arrival-angle grid."""

    steering_angle: float
    frequencies: np.ndarray
    angles: np.ndarray
    values: np.ndarray
    geometry: ArrayGeometry
    medium: Medium
    spec: dict = field(default_factory=dict)

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)

    @property
    def magnitude_db(self) -> np.ndarray:
        return magnitude_to_db(self.values)

    def row_index(self, frequency: float) -> int:
        """Index of the row nearest to `frequency`."""
        lo, hi = self.frequencies[0], self.frequencies[-1]
        slack = 1e-9 * max(1.0, abs(hi))
        if not (lo - slack <= frequency <= hi + slack):
            raise RangeError(
                f"frequency {frequency} Hz outside grid [{lo}, {hi}] Hz")
        return int(np.argmin(np.abs(self.frequencies - frequency)))


def _angle_grid(angle_step: float, phi: float) -> np.ndarray:
    count = math.ceil(TWO_PI / angle_step - 1e-9)
    angles = angle_step * np.arange(count)
    angles = angles[angles < TWO_PI]
    near = np.abs(angles - phi)
    near = np.minimum(near, TWO_PI - near)
    hit = np.flatnonzero(near <= _SNAP_TOLERANCE)
    if hit.size:
        angles[hit[0]] = phi
        return angles
    return np.insert(angles, np.searchsorted(angles, phi), phi)


def compute_grid(geom: ArrayGeometry, phi: float,
                 f_min: float = DEFAULT_F_MIN,
                 f_max: float = DEFAULT_F_MAX,
                 f_step: float = DEFAULT_F_STEP,
                 angle_step: float = DEFAULT_ANGLE_STEP,
                 medium: Medium = Medium()) -> BeamPatternGrid:
    """Sample the transfer function over ``[f_min, f_max] x [0, 2*pi)``.

    The steering angle is always a column of the grid: it is inserted when
    it does not fall on a multiple of `angle_step`.
    """
    if not (0 < f_min <= f_max):
        raise ParameterError(
            f"need 0 < f_min <= f_max, got f_min={f_min}, f_max={f_max}")
    if not f_step > 0:
        raise ParameterError(f"f_step must be positive, got {f_step}")
    if not (0 < angle_step <= math.pi / 8):
        raise ParameterError(
            f"angle_step must lie in (0, pi/8], got {angle_step}")

    phi = wrap_angle(phi)
    rows = int(math.floor((f_max - f_min) / f_step + 1e-9)) + 1
    frequencies = f_min + f_step * np.arange(rows)
    angles = _angle_grid(angle_step, phi)
    values = transfer_function(geom, phi, angles[np.newaxis, :],
                               TWO_PI * frequencies[:, np.newaxis], medium)
    spec = {"f_min": f_min, "f_max": f_max, "f_step": f_step,
            "angle_step": angle_step}
    return BeamPatternGrid(phi, frequencies, angles, values, geom, medium,
                           spec)


@dataclass(frozen=True)
class PolarSlice:
    frequency: float
    angles: np.ndarray
    magnitudes: np.ndarray


def polar_slice(grid: BeamPatternGrid, frequency: float) -> PolarSlice:
    """Magnitude response of the grid row nearest to `frequency`."""
    row = grid.row_index(frequency)
    return PolarSlice(float(grid.frequencies[row]), grid.angles.copy(),
                      np.abs(grid.values[row]))


class Lobe(NamedTuple):
    angle: float
    magnitude: float


def _circular_mean_angle(a: float, b: float) -> float:
    gap = (b - a) % TWO_PI
    return float((a + gap / 2.0) % TWO_PI)


def find_lobes(polar: PolarSlice, min_magnitude: float = 0.0) -> list[Lobe]:
    """Circular local maxima of a polar slice, strongest first.

    A run of equal magnitudes flanked on both sides by strictly smaller
    values counts as a single lobe located at the run's central angle. A
    completely flat slice is one lobe.
    """
    if not (0.0 <= min_magnitude <= 1.0):
        raise ParameterError(
            f"min_magnitude must lie in [0, 1], got {min_magnitude}")
    mags = np.asarray(polar.magnitudes, dtype=float)
    angles = np.asarray(polar.angles, dtype=float)
    n = mags.size
    if n == 0:
        return []

    differs = np.abs(np.diff(mags, append=mags[0])) > _PLATEAU_TOLERANCE
    if not differs.any():
        if mags[0] < min_magnitude:
            return []
        return [Lobe(float(angles[n // 2]), float(mags[0]))]

    # rotate so that index 0 starts a new run
    start = (int(np.flatnonzero(differs)[0]) + 1) % n
    order = np.roll(np.arange(n), -start)
    m, a, brk = mags[order], angles[order], differs[order]

    runs = []
    begin = 0
    for i in range(n):
        if brk[i]:
            runs.append((begin, i))
            begin = i + 1

    lobes = []
    for j, (lo, hi) in enumerate(runs):
        value = m[lo]
        left = m[runs[j - 1][0]]
        right = m[runs[(j + 1) % len(runs)][0]]
        if value > left and value > right and value >= min_magnitude:
            mid = (lo + hi) / 2.0
            if mid == int(mid):
                centre = float(a[int(mid)])
            else:
                centre = _circular_mean_angle(a[int(mid)], a[int(mid) + 1])
            peak = float(m[lo:hi + 1].max())
            lobes.append(Lobe(centre, peak))
    lobes.sort(key=lambda lobe: (-lobe.magnitude, lobe.angle))
    return lobes
