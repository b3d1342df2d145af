"""Grid and slice runs over (coupling, delay), peak detection, and the
delay-transfer comparison.

A row (fixed tau) integrates the driver once and reuses it for every
coupling value in the row, including the uncoupled baseline; rows are
independent and may run in parallel worker processes. Records are
assembled row-major (tau outer, coupling inner) whatever the execution
order, so output is deterministic for any worker count.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .models import DEFAULT_HISTORY, DEFAULT_IC, OscillatorParams, fixed_points
from .observables import (
    ExtremaDiagram,
    ObservableRecord,
    amplitude,
    classify_behavior,
    classify_region,
    dominant_frequency,
    extrema_diagram,
    mean_distance,
)
from .simulate import simulate_driver, simulate_response
from .solver import DivergenceError, SolverConfig


@dataclass(frozen=True)
class GridRange:
    """Inclusive arithmetic range; values are start + i*step."""

    start: float
    stop: float
    step: float

    def __post_init__(self):
        if not self.step > 0.0:
            raise ValueError(f"step must be positive, got {self.step}")
        if self.stop < self.start:
            raise ValueError(
                f"empty range: stop {self.stop} below start {self.start}"
            )

    def values(self) -> np.ndarray:
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return self.start + np.arange(n) * self.step

    @classmethod
    def single(cls, value: float) -> "GridRange":
        return cls(value, value, 1.0)


@dataclass(frozen=True)
class SweepGrid:
    """Rectangular (coupling, tau) grid plus run configuration."""

    tau_range: GridRange
    c_range: GridRange
    sim: SolverConfig
    params: OscillatorParams = OscillatorParams()
    history: tuple = DEFAULT_HISTORY
    ic: tuple = DEFAULT_IC

    def __post_init__(self):
        if self.tau_range.start < self.sim.step_size:
            raise ValueError(
                f"tau_min = {self.tau_range.start} is below the step size "
                f"{self.sim.step_size}"
            )


@dataclass(frozen=True)
class Peak:
    """Local maximum of a 1-D observable versus a parameter."""

    location: float
    height: float
    prominence: float


@dataclass(frozen=True)
class TransferRecord:
    """Per-delay driver/response comparison for one coupling value."""

    tau: float
    coupling: float
    driver_max_mean: float | None
    driver_min_mean: float | None
    response_max_mean: float | None
    response_min_mean: float | None
    a_x1: float | None
    a_x2c: float | None
    mean_dist: float | None
    mean_dist_c0: float | None
    failed: bool = False


def _failed_records(tau, c_values, region):
    return [
        ObservableRecord(
            tau=float(tau), coupling=float(c), a_x1=None, a_x2c=None,
            mean_dist=None, mean_dist_c0=None, omega1=None, omega2=None,
            region=region, behavior=None, failed=True,
        )
        for c in c_values
    ]


def _extrema_means(series, h_record, omega_hint):
    """Means of trailing maxima/minima; window extremes for flat tails."""
    diagram: ExtremaDiagram = extrema_diagram(
        series, h_record, omega_hint=omega_hint
    )
    if len(diagram.maxima) > 0:
        hi = float(np.mean(diagram.maxima))
    else:
        span = len(series) - max(2, int(round(len(series) / 3)))
        hi = float(np.max(series[span:]))
    if len(diagram.minima) > 0:
        lo = float(np.mean(diagram.minima))
    else:
        span = len(series) - max(2, int(round(len(series) / 3)))
        lo = float(np.min(series[span:]))
    return hi, lo


def _compute_row(tau, c_values, params, sim, history, ic, transfer=False):
    """All records of one fixed-tau row (driver shared across couplings)."""
    tau = float(tau)
    region = classify_region(tau)
    row_params = replace(params, tau=tau, coupling=0.0)
    try:
        driver = simulate_driver(row_params, sim, history)
    except DivergenceError:
        records = _failed_records(tau, c_values, region)
        if transfer:
            return records, [
                TransferRecord(
                    tau=tau, coupling=float(c), driver_max_mean=None,
                    driver_min_mean=None, response_max_mean=None,
                    response_min_mean=None, a_x1=None, a_x2c=None,
                    mean_dist=None, mean_dist_c0=None, failed=True,
                )
                for c in c_values
            ]
        return records

    h_rec = driver.trajectory.h_record
    x1 = driver.trajectory.samples[:, 0]
    a_x1 = amplitude(x1)
    omega1 = dominant_frequency(x1, h_rec)
    wells = fixed_points(params).response_wells or (-1.0, 1.0)

    try:
        baseline = simulate_response(driver, 0.0, ic)
        dist_c0 = mean_distance(x1, baseline.samples[:, 0])
    except DivergenceError:
        dist_c0 = None

    records = []
    extras = []
    for c in c_values:
        c = float(c)
        try:
            resp = simulate_response(driver, c, ic)
        except DivergenceError:
            records.append(ObservableRecord(
                tau=tau, coupling=c, a_x1=a_x1, a_x2c=None, mean_dist=None,
                mean_dist_c0=dist_c0, omega1=omega1, omega2=None,
                region=region, behavior=None, failed=True,
            ))
            if transfer:
                extras.append(TransferRecord(
                    tau=tau, coupling=c, driver_max_mean=None,
                    driver_min_mean=None, response_max_mean=None,
                    response_min_mean=None, a_x1=a_x1, a_x2c=None,
                    mean_dist=None, mean_dist_c0=dist_c0, failed=True,
                ))
            continue
        x2 = resp.samples[:, 0]
        a_x2c = amplitude(x2)
        omega2 = dominant_frequency(x2, h_rec)
        dist = mean_distance(x1, x2)
        behavior = classify_behavior(x2, wells)
        records.append(ObservableRecord(
            tau=tau, coupling=c, a_x1=a_x1, a_x2c=a_x2c, mean_dist=dist,
            mean_dist_c0=dist_c0, omega1=omega1, omega2=omega2,
            region=region, behavior=behavior, failed=False,
        ))
        if transfer:
            d_hi, d_lo = _extrema_means(x1, h_rec, omega1)
            r_hi, r_lo = _extrema_means(x2, h_rec, omega2)
            extras.append(TransferRecord(
                tau=tau, coupling=c, driver_max_mean=d_hi,
                driver_min_mean=d_lo, response_max_mean=r_hi,
                response_min_mean=r_lo, a_x1=a_x1, a_x2c=a_x2c,
                mean_dist=dist, mean_dist_c0=dist_c0, failed=False,
            ))
    if transfer:
        return records, extras
    return records


def _row_task(args):
    return _compute_row(*args)


def _run_rows(tau_values, c_values, params, sim, history, ic, jobs,
              transfer=False):
    c_values = [float(c) for c in c_values]
    tasks = [
        (float(tau), c_values, params, sim, tuple(history), tuple(ic), transfer)
        for tau in tau_values
    ]
    if jobs <= 1 or len(tasks) <= 1:
        return [_row_task(t) for t in tasks]
    workers = min(jobs, len(tasks))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_row_task, tasks))


def run_sweep(grid: SweepGrid, jobs: int = 1) -> list[ObservableRecord]:
    """One record per (tau, coupling) grid point, row-major (tau outer).

    Divergent points are flagged, never fatal; output is identical for any
    worker count.
    """
    rows = _run_rows(
        grid.tau_range.values(), grid.c_range.values(), grid.params,
        grid.sim, grid.history, grid.ic, jobs,
    )
    return [rec for row in rows for rec in row]


def run_slice(fixed: str, value: float, varying: GridRange,
              sim: SolverConfig, params: OscillatorParams = OscillatorParams(),
              history=DEFAULT_HISTORY, ic=DEFAULT_IC,
              jobs: int = 1) -> list[ObservableRecord]:
    """One-dimensional sweep with tau or the coupling held fixed.

    ``fixed`` is "tau" (couplings vary) or "coupling" (delays vary).
    """
    if fixed == "tau":
        grid = SweepGrid(
            tau_range=GridRange.single(value), c_range=varying, sim=sim,
            params=params, history=history, ic=ic,
        )
    elif fixed in ("coupling", "c"):
        grid = SweepGrid(
            tau_range=varying, c_range=GridRange.single(value), sim=sim,
            params=params, history=history, ic=ic,
        )
    else:
        raise ValueError(f"fixed must be 'tau' or 'coupling', got {fixed!r}")
    return run_sweep(grid, jobs=jobs)


def find_peaks(values, locations=None) -> list[Peak]:
    """Local maxima (3-point test) with topographic prominence.

    The prominence of a peak is its height minus the higher of the two
    flanking minima, where each flank extends to the nearest strictly
    higher sample (or the array end). Needs at least 3 points.
    """
    values = np.asarray(values, dtype=float)
    n = len(values)
    if n < 3:
        raise ValueError(f"need at least 3 points, got {n}")
    if locations is None:
        locations = np.arange(n, dtype=float)
    else:
        locations = np.asarray(locations, dtype=float)
        if locations.shape != values.shape:
            raise ValueError("locations and values must have equal length")
    peaks = []
    for i in range(1, n - 1):
        v = values[i]
        if not (values[i - 1] < v and v > values[i + 1]):
            continue
        left_min = v
        j = i - 1
        while j >= 0 and values[j] <= v:
            if values[j] < left_min:
                left_min = values[j]
            j -= 1
        right_min = v
        j = i + 1
        while j < n and values[j] <= v:
            if values[j] < right_min:
                right_min = values[j]
            j += 1
        peaks.append(Peak(
            location=float(locations[i]), height=float(v),
            prominence=float(v - max(left_min, right_min)),
        ))
    return peaks


def delay_transfer_report(coupling: float, tau_range: GridRange,
                          sim: SolverConfig,
                          params: OscillatorParams = OscillatorParams(),
                          history=DEFAULT_HISTORY, ic=DEFAULT_IC,
                          jobs: int = 1) -> list[TransferRecord]:
    """Driver-versus-response comparison along a delay scan.

    Per delay: means of the trailing extrema of both oscillators, both
    amplitudes, the coupled mean distance and the uncoupled baseline
    distance.
    """
    if coupling < 0.0:
        raise ValueError(f"coupling must be >= 0, got {coupling}")
    rows = _run_rows(
        tau_range.values(), [coupling], params, sim, history, ic, jobs,
        transfer=True,
    )
    return [extra for _, extras in rows for extra in extras]


def transfer_observables(coupling: float, tau_range: GridRange,
                         sim: SolverConfig,
                         params: OscillatorParams = OscillatorParams(),
                         history=DEFAULT_HISTORY, ic=DEFAULT_IC,
                         jobs: int = 1) -> list[ObservableRecord]:
    """Observable records of a delay scan at one coupling value."""
    if coupling < 0.0:
        raise ValueError(f"coupling must be >= 0, got {coupling}")
    grid = SweepGrid(
        tau_range=tau_range, c_range=GridRange.single(coupling), sim=sim,
        params=params, history=history, ic=ic,
    )
    return run_sweep(grid, jobs=jobs)
