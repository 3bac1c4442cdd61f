import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from beamsim.beampattern import (
    PolarSlice, compute_grid, find_lobes, magnitude_to_db, polar_slice,
    transfer_function,
)
from beamsim.exceptions import ParameterError, RangeError
from beamsim.geometry import ArrayGeometry

TWO_PI = 2 * math.pi
BROADSIDE = math.pi / 2

# 40-digit mpmath direct summation of the N-term phasor average
LINEAR_2K_45DEG = -0.011709511945761009691
CIRCULAR_2K_45DEG = 0.11127153798865800398
CIRCULAR_1K_TH1_PHI03 = 0.77183496434682849026


def dirichlet_magnitude(n, spacing, c, f, theta, phi):
    """Closed-form |H| of an n-element uniform line array."""
    psi = TWO_PI * f * spacing * (np.cos(theta) - np.cos(phi)) / c
    half = np.sin(psi / 2)
    with np.errstate(invalid="ignore", divide="ignore"):
        mag = np.abs(np.sin(n * psi / 2) / (n * half))
    return np.where(np.abs(half) < 1e-12, 1.0, mag)


def geometries():
    return st.one_of(
        st.builds(ArrayGeometry.linear, st.integers(2, 16),
                  st.floats(0.005, 0.3)),
        st.builds(ArrayGeometry.circular, st.integers(2, 16),
                  st.floats(0.005, 0.3)),
    )


angles = st.floats(0.0, TWO_PI, exclude_max=True)
omegas = st.floats(0.0, TWO_PI * 8000)


@given(geometries(), angles, omegas)
def test_unity_at_steering(geom, phi, omega):
    assert transfer_function(geom, phi, phi, omega) == 1 + 0j


@given(geometries(), angles, angles, omegas)
def test_magnitude_bound(geom, phi, theta, omega):
    assert abs(transfer_function(geom, phi, theta, omega)) <= 1 + 1e-12


@given(geometries(), angles, angles)
def test_zero_frequency(geom, phi, theta):
    assert transfer_function(geom, phi, theta, 0.0) == 1 + 0j


@given(geometries(), angles, angles, omegas)
def test_conjugate_symmetry(geom, phi, theta, omega):
    pos = transfer_function(geom, phi, theta, omega)
    neg = transfer_function(geom, phi, theta, -omega)
    assert neg == pytest.approx(pos.conjugate(), abs=1e-12)


@given(st.integers(2, 16), st.floats(0.005, 0.3), angles, angles, omegas)
def test_linear_mirror_symmetry(n, d, phi, theta, omega):
    geom = ArrayGeometry.linear(n, d)
    a = transfer_function(geom, phi, theta, omega)
    b = transfer_function(geom, phi, TWO_PI - theta, omega)
    assert a == pytest.approx(b, abs=1e-12)
    assert abs(transfer_function(geom, phi, TWO_PI - phi, omega)) \
        == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=200)
@given(st.integers(2, 16), st.floats(0.005, 0.3), angles, angles,
       st.floats(1.0, 8000.0))
def test_linear_matches_dirichlet_kernel(n, d, phi, theta, f):
    geom = ArrayGeometry.linear(n, d)
    got = abs(transfer_function(geom, phi, theta, TWO_PI * f))
    assert got == pytest.approx(
        float(dirichlet_magnitude(n, d, 343.0, f, theta, phi)), abs=1e-9)


def test_ambiguity_lobe_value(linear_defaults):
    for f in (300, 1234.5, 4000):
        h = transfer_function(linear_defaults, BROADSIDE, 1.5 * math.pi,
                              TWO_PI * f)
        assert abs(h) == pytest.approx(1.0, abs=1e-12)


def test_frozen_oracle_values(linear_defaults, circular_defaults):
    h = transfer_function(linear_defaults, BROADSIDE, math.pi / 4,
                          TWO_PI * 2000)
    assert h == pytest.approx(LINEAR_2K_45DEG, abs=1e-14)
    h = transfer_function(circular_defaults, BROADSIDE, math.pi / 4,
                          TWO_PI * 2000)
    assert h == pytest.approx(CIRCULAR_2K_45DEG, abs=1e-14)
    h = transfer_function(circular_defaults, 0.3, 1.0, TWO_PI * 1000)
    assert h == pytest.approx(CIRCULAR_1K_TH1_PHI03, abs=1e-14)


def test_vectorised_matches_scalar(circular_defaults):
    thetas = np.linspace(0, TWO_PI, 7)
    omegas = TWO_PI * np.array([300.0, 2500.0])
    grid = transfer_function(circular_defaults, 1.1, thetas[None, :],
                             omegas[:, None])
    for i, w in enumerate(omegas):
        for j, t in enumerate(thetas):
            assert grid[i, j] == transfer_function(circular_defaults, 1.1,
                                                   t, w)


def test_single_row_grid(linear_defaults):
    grid = compute_grid(linear_defaults, BROADSIDE, 300, 300)
    assert grid.values.shape == (1, 360)
    assert np.all(grid.magnitude <= 1 + 1e-12)


def test_grid_axes(linear_defaults):
    grid = compute_grid(linear_defaults, BROADSIDE)
    assert grid.frequencies[0] == 300 and grid.frequencies[-1] == 4000
    assert grid.frequencies.size == 371
    assert grid.angles.size == 360 and grid.angles[-1] < TWO_PI
    assert np.all(np.diff(grid.angles) > 0)


def test_linear_grid_row_maxima(linear_defaults):
    grid = compute_grid(linear_defaults, BROADSIDE)
    mags = grid.magnitude
    np.testing.assert_allclose(mags.max(axis=1), 1.0, atol=1e-12)
    cols = [int(np.argmin(np.abs(grid.angles - a)))
            for a in (BROADSIDE, 1.5 * math.pi)]
    np.testing.assert_allclose(mags[:, cols], 1.0, atol=1e-12)
    others = np.delete(mags, cols, axis=1)
    assert others.max() < 1 - 1e-6


def test_circular_unique_row_maximum(circular_defaults):
    grid = compute_grid(circular_defaults, BROADSIDE)
    col = int(np.argmin(np.abs(grid.angles - BROADSIDE)))
    high = grid.frequencies >= 2000
    mags = grid.magnitude[high]
    assert np.all(mags[:, col] == 1.0)
    assert np.all(np.delete(mags, col, axis=1).max(axis=1) < 1.0)


def test_steering_column_injected(circular_defaults):
    phi = math.radians(33.3)
    grid = compute_grid(circular_defaults, phi, 500, 600, 50)
    assert grid.angles.size == 361
    col = int(np.flatnonzero(grid.angles == phi)[0])
    assert np.all(grid.values[:, col] == 1 + 0j)


def test_on_grid_steering_is_snapped(linear_defaults):
    grid = compute_grid(linear_defaults, math.radians(90.0))
    assert grid.angles.size == 360
    assert np.all(grid.values[:, 90] == 1 + 0j)


@pytest.mark.parametrize("kwargs", [
    {"f_min": 0.0}, {"f_min": 500.0, "f_max": 400.0}, {"f_step": 0.0},
    {"angle_step": 0.0}, {"angle_step": math.pi / 4},
])
def test_grid_parameter_errors(linear_defaults, kwargs):
    with pytest.raises(ParameterError):
        compute_grid(linear_defaults, BROADSIDE, **kwargs)


def test_polar_slice_lookup(linear_defaults):
    grid = compute_grid(linear_defaults, BROADSIDE)
    polar = polar_slice(grid, 2000)
    assert polar.frequency == 2000
    np.testing.assert_array_equal(polar.magnitudes, np.abs(grid.values[170]))
    assert polar_slice(grid, 2004).frequency == 2000
    with pytest.raises(RangeError):
        polar_slice(grid, 4100)
    with pytest.raises(RangeError):
        polar_slice(grid, 250)


def test_polar_slice_single_row(circular_defaults):
    grid = compute_grid(circular_defaults, BROADSIDE, 700, 700)
    np.testing.assert_array_equal(polar_slice(grid, 700).magnitudes,
                                  np.abs(grid.values[0]))


def test_low_frequency_slice_is_broad(linear_defaults):
    # closed-form kernel: |H| >= 0.9 for 53.07 deg <= theta <= 126.93 deg
    grid = compute_grid(linear_defaults, BROADSIDE)
    polar = polar_slice(grid, 300)
    deg = np.round(np.degrees(polar.angles)).astype(int)
    inside = (deg >= 54) & (deg <= 126)
    assert np.all(polar.magnitudes[inside] >= 0.9)
    assert polar.magnitudes[deg == 53][0] < 0.9
    assert polar.magnitudes[deg == 127][0] < 0.9


def test_lobes_flat_slice(linear_defaults):
    grid = compute_grid(linear_defaults, BROADSIDE, 1, 1)
    flat = PolarSlice(0.0, grid.angles, np.ones(grid.angles.size))
    lobes = find_lobes(flat)
    assert len(lobes) == 1 and lobes[0].magnitude == 1.0
    assert find_lobes(PolarSlice(0.0, grid.angles, np.zeros(360)), 0.5) == []


def test_lobes_linear_4k(linear_defaults):
    grid = compute_grid(linear_defaults, BROADSIDE)
    lobes = find_lobes(polar_slice(grid, 4000), 0.9)
    assert sorted(round(math.degrees(lobe.angle), 9) for lobe in lobes) \
        == [90.0, 270.0]


def _brute_lobe_count(geom, f, step_deg=0.05):
    """Count local maxima of |H| on a fine grid, direct phasor sum."""
    theta = np.deg2rad(np.arange(0, 360, step_deg))
    k = np.arange(1, geom.mic_count + 1)
    az = 2 * np.pi * k / geom.mic_count
    diff = (geom.radius / 343.0) * (np.cos(theta[:, None] - az)
                                    - np.cos(BROADSIDE - az))
    mag = np.abs(np.exp(-2j * np.pi * f * diff).mean(axis=1))
    return int(np.sum((mag > np.roll(mag, 1)) & (mag > np.roll(mag, -1))))


@pytest.mark.parametrize("f, expected", [(2000, 4), (3000, 8), (4000, 8)])
def test_circular_lobe_counts(circular_defaults, f, expected):
    assert _brute_lobe_count(circular_defaults, f) == expected
    grid = compute_grid(circular_defaults, BROADSIDE)
    lobes = find_lobes(polar_slice(grid, f), 0.0)
    assert len(lobes) == expected
    assert math.degrees(lobes[0].angle) == pytest.approx(90.0, abs=1.0)
    assert lobes[0].magnitude == 1.0


def test_lobes_sorted_and_local_maxima(circular_defaults):
    grid = compute_grid(circular_defaults, BROADSIDE)
    polar = polar_slice(grid, 3500)
    lobes = find_lobes(polar, 0.0)
    mags = [lobe.magnitude for lobe in lobes]
    assert mags == sorted(mags, reverse=True)
    m = polar.magnitudes
    for lobe in lobes:
        i = int(np.argmin(np.abs(polar.angles - lobe.angle)))
        assert m[i] > m[i - 1] and m[i] > m[(i + 1) % m.size]


def test_plateau_reported_at_centre():
    angles = np.deg2rad(np.arange(0, 360, 10.0))
    mags = np.full(36, 0.1)
    mags[[4, 5, 6]] = 0.5          # odd plateau centred on 50 deg
    mags[[20, 21]] = 0.7           # even plateau, centre 205 deg
    mags[[35, 0]] = 0.3            # wraps across 0 deg, centre 355 deg
    lobes = find_lobes(PolarSlice(1.0, angles, mags), 0.0)
    got = [(round(math.degrees(lobe.angle), 6), lobe.magnitude)
           for lobe in lobes]
    assert got == [(205.0, 0.7), (50.0, 0.5), (355.0, 0.3)]
    assert len(find_lobes(PolarSlice(1.0, angles, mags), 0.4)) == 2
    with pytest.raises(ParameterError):
        find_lobes(PolarSlice(1.0, angles, mags), 1.5)


def test_db_floor():
    assert magnitude_to_db(0.0) == pytest.approx(-200.0)
    assert magnitude_to_db(1.0) == 0.0
    assert magnitude_to_db(0.1) == pytest.approx(-20.0)


def test_circular_non_ambiguity(circular_defaults):
    theta = np.deg2rad(np.arange(0, 360, 0.25))
    mags = np.abs(transfer_function(circular_defaults, BROADSIDE, theta,
                                    2 * math.pi * 2000))
    near_one = np.degrees(theta[mags > 1 - 1e-9])
    assert near_one.size and np.all(np.abs(near_one - 90.0) <= 0.25)
    # the 0.999 region is one contiguous main lobe, nothing elsewhere
    high = np.flatnonzero(mags > 0.999)
    assert np.all(np.diff(high) == 1)
    assert np.all(np.abs(np.degrees(theta[high]) - 90.0) < 1.5)
