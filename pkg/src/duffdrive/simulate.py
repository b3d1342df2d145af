"""High-level runners for the driver / response pair.

The driver is integrated once as a delayed system; its position at the
four Runge-Kutta stage points of every step is kept, so any number of
response integrations (one per coupling value) can be driven afterwards at
plain-ODE cost. Composing the two is arithmetically identical to
integrating the joint four-component system in a single RK4 pass, because
the driver block of that system never reads the response components.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .models import DEFAULT_HISTORY, DEFAULT_IC, OscillatorParams
from .solver import (
    DEFAULT_BLOW_UP,
    DivergenceError,
    SegmentStore,
    SolverConfig,
    Trajectory,
)


@dataclass(frozen=True)
class DriverRun:
    """Driver trajectory plus the stage data needed to force responses."""

    params: OscillatorParams
    config: SolverConfig
    history: tuple
    trajectory: Trajectory
    stage_positions: np.ndarray  # (n_steps, 4) x1 at the RK stage points

    @property
    def x(self) -> np.ndarray:
        return self.trajectory.samples[:, 0]


@dataclass(frozen=True)
class PairRun:
    """Joint run: 4-component trajectory (x1, v1, x2, v2) and its parts."""

    params: OscillatorParams
    config: SolverConfig
    driver: DriverRun
    response: Trajectory
    trajectory: Trajectory


def simulate_driver(params: OscillatorParams, cfg: SolverConfig,
                    history=DEFAULT_HISTORY,
                    blow_up: float = DEFAULT_BLOW_UP) -> DriverRun:
    """Integrate the delayed driver from a constant history.

    ``history`` is the constant state on [-tau, 0] (also the initial
    condition at t = 0). Callable histories are only supported by the
    generic :func:`duffdrive.solver.integrate`.
    """
    h = cfg.step_size
    tau = params.tau
    if tau < 0.0:
        raise ValueError(f"delay tau must be >= 0, got {tau}")
    if 0.0 < tau < h:
        raise ValueError(
            f"delay tau = {tau} is shorter than one step ({h}); "
            "use tau = 0 or tau >= step_size"
        )
    hist = np.asarray(history, dtype=float)
    if hist.shape != (2,):
        raise ValueError("driver history must be a (position, velocity) pair")
    n = cfg.n_steps
    # Zeroed, not empty: boundary-clamped lagged lookups may read the slot
    # being written this step with an (exactly) zero Hermite weight.
    y = np.zeros((n + 1, 2))
    f = np.zeros((n + 1, 2))
    stage_x = np.zeros((n, 4))
    failed = kernels.integrate_driver(
        params.mu, params.alpha, params.gamma, tau, h, n,
        hist[0], hist[0], hist[1], blow_up, y, f, stage_x,
    )
    if failed >= 0:
        raise DivergenceError(failed * h)
    stride = int(cfg.record_stride)
    traj = Trajectory(
        t0=0.0, h_record=h * stride, samples=y[::stride].copy(),
        dimension=2, dense=SegmentStore(h, y, f),
    )
    return DriverRun(
        params=params, config=cfg, history=(float(hist[0]), float(hist[1])),
        trajectory=traj, stage_positions=stage_x,
    )


def simulate_response(driver: DriverRun, coupling: float,
                      ic=DEFAULT_IC,
                      blow_up: float = DEFAULT_BLOW_UP) -> Trajectory:
    """Integrate the response forced by an already-computed driver run."""
    if coupling < 0.0:
        raise ValueError(f"coupling must be >= 0, got {coupling}")
    p = driver.params
    cfg = driver.config
    h = cfg.step_size
    n = cfg.n_steps
    ic = np.asarray(ic, dtype=float)
    if ic.shape != (2,):
        raise ValueError("response ic must be a (position, velocity) pair")
    y = np.zeros((n + 1, 2))
    failed = kernels.integrate_response(
        p.mu, p.alpha, coupling, h, n, ic[0], ic[1], blow_up,
        driver.stage_positions, y,
    )
    if failed >= 0:
        raise DivergenceError(failed * h)
    stride = int(cfg.record_stride)
    return Trajectory(
        t0=0.0, h_record=h * stride, samples=y[::stride].copy(), dimension=2,
    )


def simulate_pair(params: OscillatorParams, cfg: SolverConfig,
                  history=DEFAULT_HISTORY, ic=DEFAULT_IC,
                  blow_up: float = DEFAULT_BLOW_UP) -> PairRun:
    """Run driver and response together; couples through params.coupling."""
    driver = simulate_driver(params, cfg, history, blow_up)
    response = simulate_response(driver, params.coupling, ic, blow_up)
    samples = np.hstack([driver.trajectory.samples, response.samples])
    traj = Trajectory(
        t0=0.0, h_record=driver.trajectory.h_record, samples=samples,
        dimension=4,
    )
    return PairRun(params=params, config=cfg, driver=driver,
                   response=response, trajectory=traj)
