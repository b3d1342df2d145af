"""Critical-delay computation against closed forms, a brute-force scan of
the crossing condition, and the simulated onset of oscillation."""
import math

import numpy as np
import pytest

from duffdrive.models import OscillatorParams
from duffdrive.observables import amplitude
from duffdrive.simulate import simulate_driver
from duffdrive.solver import SolverConfig
from duffdrive.stability import (
    critical_delay,
    critical_frequencies,
    critical_points,
    linearized_stiffness,
)

P = OscillatorParams(mu=0.01, alpha=-1.0, gamma=-0.5)
K_WELL = 3.5  # stiffness of the well linearization at x*^2 = 1.5


def test_linearized_stiffness():
    assert linearized_stiffness(0.0, P) == -1.0
    assert linearized_stiffness(math.sqrt(1.5), P) == pytest.approx(3.5, abs=1e-12)
    assert (linearized_stiffness(math.sqrt(1.5), P)
            == linearized_stiffness(-math.sqrt(1.5), P))


def test_critical_frequencies_undamped_closed_form():
    # mu = 0: omega^2 = K +- |gamma|
    p = OscillatorParams(mu=0.0, alpha=-1.0, gamma=-0.5)
    roots = critical_frequencies(p, K_WELL)
    assert roots == pytest.approx([math.sqrt(3.0), 2.0], abs=1e-12)


def test_critical_frequencies_match_brute_force_scan():
    roots = critical_frequencies(P, K_WELL)
    assert len(roots) == 2

    def residual(w):
        return (w * w - K_WELL) ** 2 + (P.mu * w) ** 2 - P.gamma ** 2

    grid = np.arange(1e-5, 5.0, 1e-5)
    res = residual(grid)
    crossings = grid[:-1][np.sign(res[:-1]) != np.sign(res[1:])]
    assert len(crossings) == len(roots)
    for root, scan in zip(roots, crossings):
        assert abs(root - scan) < 1e-4


def test_reported_crossing_frequency():
    roots = critical_frequencies(P, K_WELL)
    assert abs(roots[-1] - 2.0004) < 0.01


def test_critical_frequencies_no_real_roots():
    # Origin linearization: K = alpha = -1 admits no crossing.
    assert critical_frequencies(P, -1.0) == []


def test_critical_frequencies_need_gamma():
    with pytest.raises(ValueError):
        critical_frequencies(OscillatorParams(gamma=0.0), K_WELL)


def test_critical_delay_undamped_closed_form():
    p = OscillatorParams(mu=0.0, alpha=-1.0, gamma=-0.5)
    assert critical_delay(2.0, p, K_WELL) == pytest.approx(math.pi / 2, abs=1e-12)


def test_critical_delay_reported_value():
    roots = critical_frequencies(P, K_WELL)
    tau_c = critical_delay(roots[-1], P, K_WELL)
    assert abs(tau_c - 1.5505) < 0.005


def test_critical_delay_branches():
    roots = critical_frequencies(P, K_WELL)
    w = roots[-1]
    principal = critical_delay(w, P, K_WELL, "principal")
    complement = critical_delay(w, P, K_WELL, "complement")
    assert principal < complement
    assert principal + complement == pytest.approx(2.0 * math.pi / w, abs=1e-12)
    with pytest.raises(ValueError):
        critical_delay(w, P, K_WELL, "upper")


def test_critical_delay_rejects_out_of_range_argument():
    with pytest.raises(ValueError):
        critical_delay(10.0, P, K_WELL)


def test_critical_points_residuals():
    points = critical_points(P)
    assert points
    for cp in points:
        assert abs(cp.residual) < 1e-9
        assert cp.omega > 0 and cp.tau_c > 0


def test_critical_points_empty_without_delayed_feedback():
    assert critical_points(OscillatorParams(gamma=0.0)) == []


def test_onset_brackets_the_critical_delay():
    # The driver holds its well below tau_c and oscillates above it.
    points = critical_points(P)
    tau_c = min(
        cp.tau_c for cp in points if abs(cp.omega - 2.0) < 0.05
    )
    cfg = SolverConfig(step_size=0.01, t_final=300.0)
    below = simulate_driver(OscillatorParams(tau=tau_c - 0.05), cfg)
    above = simulate_driver(OscillatorParams(tau=tau_c + 0.05), cfg)
    assert amplitude(below.trajectory.samples[:, 0]) < 0.05
    assert amplitude(above.trajectory.samples[:, 0]) > 0.05
