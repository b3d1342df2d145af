"""Observable extraction: amplitudes, extrema, spectral lines, distances,
region and behavior labels."""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from duffdrive.models import OscillatorParams, fixed_points
from duffdrive.observables import (
    REGION_BOUNDARIES,
    amplitude,
    classify_behavior,
    classify_region,
    dominant_frequency,
    extrema_diagram,
    mean_distance,
)
from duffdrive.simulate import simulate_driver, simulate_response
from duffdrive.solver import SolverConfig

CFG = SolverConfig(step_size=0.01, t_final=300.0)
WELLS = (-1.0, 1.0)


def _driver_x(tau, cfg=CFG):
    run = simulate_driver(OscillatorParams(tau=tau), cfg)
    return run.trajectory.samples[:, 0]


# ---------------------------------------------------------------- amplitude

def test_amplitude_constant_series():
    assert amplitude(np.full(1000, 3.7)) == 0.0


def test_amplitude_known_sinusoid():
    t = np.arange(0, 100.0, 0.01)
    assert amplitude(2.0 * np.sin(t)) == pytest.approx(2.0, abs=1e-3)


def test_amplitude_window_argument():
    s = np.concatenate([np.full(900, 5.0), np.zeros(100)])
    assert amplitude(s, window=0.1) == 0.0
    assert amplitude(s, window=1.0) == 2.5
    with pytest.raises(ValueError):
        amplitude(s, window=0.0)


def test_amplitude_driver_converges_in_region_one():
    x = _driver_x(1.0, SolverConfig(step_size=0.01, t_final=500.0))
    assert amplitude(x, window=1.0 / 3.0) < 0.05


@settings(max_examples=50)
@given(scale=st.floats(-3.0, 3.0), offset=st.floats(-5.0, 5.0))
def test_amplitude_affine_invariance(scale, offset):
    t = np.arange(0, 30.0, 0.01)
    s = np.sin(1.3 * t) + 0.4 * np.sin(2.9 * t)
    expected = abs(scale) * amplitude(s)
    assert amplitude(scale * s + offset) == pytest.approx(expected, abs=1e-9)


# ------------------------------------------------------------------ extrema

def test_extrema_sinusoid():
    t = np.arange(0, 200.0, 0.01)
    d = extrema_diagram(np.sin(t), 0.01, n_periods=5, omega_hint=1.0)
    assert len(d.maxima) == 5
    assert np.all(np.abs(d.maxima - 1.0) < 1e-3)
    assert np.all(np.abs(d.minima + 1.0) < 1e-3)


def test_extrema_constant_series_is_empty():
    d = extrema_diagram(np.zeros(20000), 0.01)
    assert len(d.maxima) == 0 and len(d.minima) == 0


def test_extrema_window_longer_than_series():
    with pytest.raises(ValueError):
        extrema_diagram(np.zeros(100), 0.01, n_periods=5, omega_hint=1.0)


def test_extrema_driver_single_well_cycle():
    # Sustained one-well oscillation: one repeated maximum/minimum pair.
    x = _driver_x(2.0)
    w1 = dominant_frequency(x, 0.01)
    d = extrema_diagram(x, 0.01, n_periods=5, omega_hint=w1)
    assert len(d.maxima) >= 4
    assert np.std(d.maxima) < 1e-3
    assert np.std(d.minima) < 1e-3
    half_spread = (np.mean(d.maxima) - np.mean(d.minima)) / 2.0
    assert half_spread == pytest.approx(amplitude(x), rel=0.05)


# -------------------------------------------------------------- frequencies

def test_dominant_frequency_pure_tone():
    t = np.arange(0, 1000.0, 0.01)
    w = dominant_frequency(np.cos(2.0 * t), 0.01)
    assert w == pytest.approx(2.0, abs=0.005)


def test_dominant_frequency_two_tones_picks_the_stronger():
    t = np.arange(0, 600.0, 0.01)
    s = 1.0 * np.cos(1.2 * t) + 0.3 * np.cos(2.9 * t)
    assert dominant_frequency(s, 0.01) == pytest.approx(1.2, abs=0.01)


def test_dominant_frequency_constant_series_has_no_line():
    assert dominant_frequency(np.full(10000, 2.0), 0.01) is None


def test_dominant_frequency_broadband_has_no_line():
    rng = np.random.default_rng(42)
    assert dominant_frequency(rng.normal(size=30000), 0.01) is None


def test_dominant_frequency_rejects_short_series():
    with pytest.raises(ValueError):
        dominant_frequency(np.zeros(100), 0.01)


def test_dominant_frequency_recovery_grid():
    # Recover 64 tones across [0.5, 3] well within one bin of the raw DFT.
    h = 0.01
    t = np.arange(0, 200.0, h)
    tol = 2.0 * math.pi / (len(t) * h)
    for w in np.linspace(0.5, 3.0, 64):
        got = dominant_frequency(np.cos(w * t), h)
        assert abs(got - w) < tol


def test_dominant_frequency_driver_region_two():
    assert dominant_frequency(_driver_x(2.0), 0.01) == pytest.approx(
        1.5881, abs=0.01
    )


# ---------------------------------------------------------------- distances

def test_mean_distance_identical_series():
    s = np.sin(np.arange(0, 30.0, 0.01))
    assert mean_distance(s, s) == 0.0


def test_mean_distance_constant_offset():
    a = np.full(3000, 1.2247)
    b = np.full(3000, -1.0)
    assert mean_distance(a, b) == pytest.approx(2.2247, abs=1e-12)


def test_mean_distance_rejects_length_mismatch():
    with pytest.raises(ValueError):
        mean_distance(np.zeros(10), np.zeros(11))


def test_mean_distance_weak_coupling_value():
    run = simulate_driver(OscillatorParams(tau=1.0), CFG)
    resp = simulate_response(run, 0.06)
    d = mean_distance(run.trajectory.samples[:, 0], resp.samples[:, 0])
    assert d == pytest.approx(2.1339, abs=0.05)


@settings(max_examples=50)
@given(st.integers(3, 40), st.integers(0, 2 ** 31 - 1))
def test_mean_distance_symmetry_and_triangle(n, seed):
    rng = np.random.default_rng(seed)
    a, b, c = rng.normal(size=(3, n))
    assert mean_distance(a, b) == mean_distance(b, a)
    assert mean_distance(a, c) <= mean_distance(a, b) + mean_distance(b, c) + 1e-12


# ------------------------------------------------------------------ regions

def test_classify_region_representatives():
    assert classify_region(1.0) == "I"
    assert classify_region(2.0) == "II"
    assert classify_region(2.7) == "III"
    assert classify_region(4.0) == "IV"


def test_classify_region_boundaries_tie_upward():
    b1, b2, b3 = REGION_BOUNDARIES
    assert classify_region(b1) == "II"
    assert classify_region(b2) == "III"
    assert classify_region(b3) == "IV"
    assert classify_region(b1 - 1e-9) == "I"
    assert classify_region(b2 - 1e-9) == "II"
    assert classify_region(b3 - 1e-9) == "III"


@given(st.floats(1e-6, 50.0))
def test_classify_region_total_step_function(tau):
    assert classify_region(tau) in ("I", "II", "III", "IV")


def test_classify_region_rejects_nonpositive():
    with pytest.raises(ValueError):
        classify_region(0.0)


# ----------------------------------------------------------------- behavior

def test_classify_behavior_fixed_point():
    assert classify_behavior(_driver_x(1.0), WELLS) == "fixed-point"


def test_classify_behavior_single_well():
    assert classify_behavior(_driver_x(2.0), WELLS) == "single-well-periodic"


def test_classify_behavior_cross_well_aperiodic():
    assert classify_behavior(_driver_x(2.7), WELLS) == "cross-well-aperiodic"


def test_classify_behavior_cross_well_periodic():
    assert classify_behavior(_driver_x(4.0), WELLS) == "cross-well-periodic"


def test_classify_behavior_synthetic_tone():
    t = np.arange(0, 300.0, 0.01)
    assert classify_behavior(2.0 * np.sin(1.5 * t), WELLS) == "cross-well-periodic"
    assert classify_behavior(np.full_like(t, 1.2), WELLS) == "fixed-point"
