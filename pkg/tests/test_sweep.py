"""Sweep engine: grids, decoupled limits, determinism across workers,
failure flagging, peak detection and the transfer report."""
import numpy as np
import pytest

from duffdrive.models import OscillatorParams
from duffdrive.observables import amplitude
from duffdrive.simulate import simulate_driver
from duffdrive.solver import SolverConfig
from duffdrive.sweep import (
    GridRange,
    SweepGrid,
    delay_transfer_report,
    find_peaks,
    run_slice,
    run_sweep,
)

FAST_CFG = SolverConfig(step_size=0.01, t_final=40.0)


def test_grid_range_values():
    v = GridRange(0.01, 4.0, 0.01).values()
    assert len(v) == 400
    assert v[0] == pytest.approx(0.01) and v[-1] == pytest.approx(4.0)
    v = GridRange(0.0, 4.0, 0.05).values()
    assert len(v) == 81
    v = GridRange.single(1.3).values()
    assert list(v) == [1.3]
    with pytest.raises(ValueError):
        GridRange(1.0, 0.5, 0.1)
    with pytest.raises(ValueError):
        GridRange(0.0, 1.0, 0.0)


def test_sweep_grid_rejects_tau_below_step():
    with pytest.raises(ValueError):
        SweepGrid(
            tau_range=GridRange(0.001, 1.0, 0.1),
            c_range=GridRange.single(0.0),
            sim=FAST_CFG,
        )


def _small_grid():
    return SweepGrid(
        tau_range=GridRange(1.0, 2.0, 1.0),
        c_range=GridRange(0.0, 2.0, 1.0),
        sim=FAST_CFG,
    )


def test_run_sweep_is_row_major_and_complete():
    records = run_sweep(_small_grid())
    assert [(r.tau, r.coupling) for r in records] == [
        (1.0, 0.0), (1.0, 1.0), (1.0, 2.0),
        (2.0, 0.0), (2.0, 1.0), (2.0, 2.0),
    ]
    assert all(not r.failed for r in records)
    assert {r.region for r in records} == {"I", "II"}


def test_driver_columns_do_not_depend_on_coupling():
    records = run_sweep(_small_grid())
    by_tau = {}
    for r in records:
        by_tau.setdefault(r.tau, []).append(r)
    for rows in by_tau.values():
        assert len({row.a_x1 for row in rows}) == 1
        assert len({row.omega1 for row in rows}) == 1


def test_uncoupled_records_identical_across_rows():
    records = [r for r in run_sweep(_small_grid()) if r.coupling == 0.0]
    assert len({r.a_x2c for r in records}) == 1
    assert len({r.omega2 for r in records}) == 1
    for r in records:
        assert r.mean_dist == r.mean_dist_c0


def test_serial_and_parallel_runs_are_bit_identical():
    serial = run_sweep(_small_grid(), jobs=1)
    parallel = run_sweep(_small_grid(), jobs=2)
    assert serial == parallel


def test_divergent_points_are_flagged_not_fatal():
    # alpha > 0 with a far-out response start: the response blows up,
    # the driver (started inside) does not.
    grid = SweepGrid(
        tau_range=GridRange.single(1.0),
        c_range=GridRange(0.0, 1.0, 1.0),
        sim=SolverConfig(step_size=0.01, t_final=20.0),
        params=OscillatorParams(mu=0.0, alpha=1.0, gamma=0.0),
        history=(0.1, 0.0),
        ic=(5.0, 0.0),
    )
    records = run_sweep(grid)
    assert all(r.failed for r in records)
    for r in records:
        assert r.a_x2c is None and r.mean_dist is None and r.behavior is None
        assert r.a_x1 is not None  # driver side stayed healthy


def test_run_slice_fixed_tau_and_fixed_coupling():
    by_c = run_slice("tau", 1.0, GridRange(0.0, 1.0, 0.5), FAST_CFG)
    assert [r.coupling for r in by_c] == [0.0, 0.5, 1.0]
    assert len({r.tau for r in by_c}) == 1
    by_tau = run_slice("coupling", 0.5, GridRange(1.0, 2.0, 0.5), FAST_CFG)
    assert [r.tau for r in by_tau] == [1.0, 1.5, 2.0]
    assert len({r.coupling for r in by_tau}) == 1
    with pytest.raises(ValueError):
        run_slice("mu", 0.0, GridRange(0.0, 1.0, 0.5), FAST_CFG)


def test_find_peaks_single_bump():
    t = np.linspace(0.0, 1.0, 101)
    bump = np.exp(-((t - 0.4) ** 2) / 0.005)
    peaks = find_peaks(bump, t)
    assert len(peaks) == 1
    assert peaks[0].location == pytest.approx(0.4, abs=0.01)
    assert peaks[0].prominence > 0.9


def test_find_peaks_monotone_is_empty():
    assert find_peaks(np.arange(10.0)) == []
    assert find_peaks(-np.arange(10.0)) == []


def test_find_peaks_needs_three_points():
    with pytest.raises(ValueError):
        find_peaks([1.0, 2.0])


def test_find_peaks_prominence_is_topographic():
    # Secondary bump next to a taller one: its prominence stops at the
    # connecting saddle, the major peak's extends to the deepest flank.
    values = np.array([0.0, 2.0, 1.5, 5.0, 0.5, 1.2, 0.1])
    peaks = find_peaks(values)
    assert [p.location for p in peaks] == [1.0, 3.0, 5.0]
    by_loc = {p.location: p for p in peaks}
    assert by_loc[3.0].prominence == pytest.approx(4.9)   # higher flank is 0.1
    assert by_loc[1.0].prominence == pytest.approx(0.5)   # saddle at 1.5
    assert by_loc[5.0].prominence == pytest.approx(0.7)   # saddle at 0.5
    assert all(p.prominence > 0 for p in peaks)
    locs = [p.location for p in peaks]
    assert locs == sorted(locs)


def test_response_mirrors_driver_amplitude_minimum():
    # Around tau = 3.68 the wells briefly restabilize and the driver
    # amplitude collapses; with a strong coupling the response follows.
    cfg = SolverConfig(step_size=0.01, t_final=300.0)
    records = run_slice("coupling", 3.0, GridRange(3.56, 3.80, 0.02), cfg)
    a_driver = np.array([r.a_x1 for r in records])
    a_response = np.array([r.a_x2c for r in records])
    dip = int(np.argmin(a_driver))
    assert abs(records[dip].tau - 3.68) <= 0.05
    assert a_driver[dip] < 0.1
    assert a_response[dip] < 0.2 * np.median(a_response)


def test_transfer_report_uncoupled_reduces_to_the_parts():
    cfg = SolverConfig(step_size=0.01, t_final=120.0)
    report = delay_transfer_report(0.0, GridRange(1.0, 2.0, 1.0), cfg)
    assert [r.tau for r in report] == [1.0, 2.0]
    for rec in report:
        assert rec.mean_dist == rec.mean_dist_c0
        driver = simulate_driver(OscillatorParams(tau=rec.tau), cfg)
        assert rec.a_x1 == amplitude(driver.trajectory.samples[:, 0])
        assert not rec.failed
        assert rec.driver_max_mean is not None
        assert rec.response_max_mean is not None
        assert rec.driver_max_mean >= rec.driver_min_mean
