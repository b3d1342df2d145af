"""Fixed-step method-of-steps integrator for one constant delay.

Classical fourth-order Runge-Kutta marched step by step; every completed
step stores its endpoint states and derivatives, and lagged queries are
answered by cubic Hermite interpolation on the covering step (or by the
history function for times before zero). Because the lag is either zero or
at least one step wide, stage-level queries never land inside the step
being computed, so the scheme stays explicit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

DEFAULT_STEP = 0.01
DEFAULT_T_FINAL = 300.0
DEFAULT_BLOW_UP = 1e6

_MAX_STEPS = 10 ** 9


class DivergenceError(RuntimeError):
    """Raised when the state leaves the finite/allowed range.

    ``time`` is the integration time at which the blow-up was detected.
    """

    def __init__(self, time: float):
        super().__init__(f"state diverged at t = {time:.6g}")
        self.time = time


@dataclass(frozen=True)
class SolverConfig:
    """Step size, horizon and sampling stride of one integration."""

    step_size: float = DEFAULT_STEP
    t_final: float = DEFAULT_T_FINAL
    record_stride: int = 1

    def __post_init__(self):
        if not (self.step_size > 0.0 and math.isfinite(self.step_size)):
            raise ValueError(f"step_size must be positive, got {self.step_size}")
        if not (self.t_final > 0.0 and math.isfinite(self.t_final)):
            raise ValueError(f"t_final must be positive, got {self.t_final}")
        if int(self.record_stride) != self.record_stride or self.record_stride < 1:
            raise ValueError(
                f"record_stride must be a positive integer, got {self.record_stride}"
            )
        if self.t_final / self.step_size > _MAX_STEPS:
            raise ValueError("t_final/step_size exceeds the supported step count")

    @property
    def n_steps(self) -> int:
        """Number of steps covering [0, t_final] (nearest integer count)."""
        return max(1, int(round(self.t_final / self.step_size)))


class HistoryFunction:
    """Prescribed state on [-tau, 0] needed to start a delayed integration."""

    def __init__(self, kind: str, fn: Callable[[float], np.ndarray],
                 constant_value: np.ndarray | None = None):
        self.kind = kind
        self._fn = fn
        self.constant_value = constant_value

    @classmethod
    def constant(cls, value) -> "HistoryFunction":
        value = np.asarray(value, dtype=float).copy()
        return cls("constant", lambda t: value, constant_value=value)

    @classmethod
    def from_callable(cls, fn: Callable[[float], np.ndarray]) -> "HistoryFunction":
        return cls("callable", lambda t: np.asarray(fn(t), dtype=float))

    def __call__(self, t: float) -> np.ndarray:
        return self._fn(t)


def as_history(history) -> HistoryFunction:
    """Coerce a constant state vector or callable into a HistoryFunction."""
    if isinstance(history, HistoryFunction):
        return history
    if callable(history):
        return HistoryFunction.from_callable(history)
    return HistoryFunction.constant(history)


@dataclass(frozen=True)
class HistorySegment:
    """One completed step with the data needed for dense output."""

    t_left: float
    t_right: float
    y_left: np.ndarray
    y_right: np.ndarray
    f_left: np.ndarray
    f_right: np.ndarray

    def evaluate(self, t: float) -> np.ndarray:
        """Cubic Hermite interpolation; exact at both endpoints."""
        h = self.t_right - self.t_left
        th = (t - self.t_left) / h
        t2 = th * th
        t3 = t2 * th
        h00 = 2.0 * t3 - 3.0 * t2 + 1.0
        h10 = t3 - 2.0 * t2 + th
        h01 = -2.0 * t3 + 3.0 * t2
        h11 = t3 - t2
        return (h00 * self.y_left + h01 * self.y_right
                + h * (h10 * self.f_left + h11 * self.f_right))


class SegmentStore:
    """Dense-output record of a whole run: node states and derivatives.

    Node ``i`` sits at ``t = i*h``; segment ``i`` spans ``[i*h, (i+1)*h]``.
    """

    def __init__(self, h: float, y: np.ndarray, f: np.ndarray):
        self.h = h
        self.y = y
        self.f = f

    @property
    def n_segments(self) -> int:
        return self.y.shape[0] - 1

    @property
    def t_end(self) -> float:
        return self.n_segments * self.h

    def segment(self, i: int) -> HistorySegment:
        if not 0 <= i < self.n_segments:
            raise IndexError(f"segment index {i} out of range")
        return HistorySegment(
            t_left=i * self.h, t_right=(i + 1) * self.h,
            y_left=self.y[i], y_right=self.y[i + 1],
            f_left=self.f[i], f_right=self.f[i + 1],
        )

    def evaluate(self, t: float) -> np.ndarray:
        """Interpolated state at ``t`` in [0, t_end]; exact at stored nodes."""
        h = self.h
        i = int(round(t / h))
        if 0 <= i <= self.n_segments and t == i * h:
            return self.y[i].copy()
        i = int(math.floor(t / h))
        if i > self.n_segments - 1:
            i = self.n_segments - 1
        if i < 0:
            i = 0
        th = (t - i * h) / h
        t2 = th * th
        t3 = t2 * th
        h00 = 2.0 * t3 - 3.0 * t2 + 1.0
        h10 = t3 - 2.0 * t2 + th
        h01 = -2.0 * t3 + 3.0 * t2
        h11 = t3 - t2
        return (h00 * self.y[i] + h01 * self.y[i + 1]
                + h * (h10 * self.f[i] + h11 * self.f[i + 1]))


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled solution, optionally carrying its dense output."""

    t0: float
    h_record: float
    samples: np.ndarray
    dimension: int
    dense: SegmentStore | None = None

    @property
    def n_samples(self) -> int:
        return self.samples.shape[0]

    @property
    def t(self) -> np.ndarray:
        return self.t0 + np.arange(self.n_samples) * self.h_record


def sample_delayed(segments: SegmentStore, history: HistoryFunction,
                   t_query: float) -> np.ndarray:
    """State at ``t_query``: history value before t=0, dense output after.

    Rejects queries beyond the stored integration time (causality).
    """
    if t_query > segments.t_end:
        raise ValueError(
            f"t_query = {t_query:.6g} is beyond the integrated time "
            f"{segments.t_end:.6g}"
        )
    if t_query < 0.0:
        return np.asarray(history(t_query), dtype=float)
    return segments.evaluate(t_query)


def integrate(rhs, history, ic, tau: float, cfg: SolverConfig,
              blow_up: float = DEFAULT_BLOW_UP) -> Trajectory:
    """Integrate ``y' = rhs(t, y, y_delayed)`` on [0, t_final].

    ``history`` supplies the state for t < 0 (constant vector, callable, or
    HistoryFunction); ``ic`` is the state at t = 0 and may differ from
    history(0). ``tau`` must be 0 (plain ODE: the lagged argument receives
    the current stage state) or at least one step wide; in-between values
    would require lagged queries inside the unfinished step and are
    rejected. Deterministic: identical inputs give bit-identical output.
    """
    h = cfg.step_size
    if tau < 0.0:
        raise ValueError(f"delay tau must be >= 0, got {tau}")
    if 0.0 < tau < h:
        raise ValueError(
            f"delay tau = {tau} is shorter than one step ({h}); "
            "use tau = 0 or tau >= step_size"
        )
    hist = as_history(history)
    y0 = np.asarray(ic, dtype=float)
    if y0.ndim != 1:
        raise ValueError("initial condition must be a 1-D state vector")
    dim = y0.shape[0]
    n = cfg.n_steps

    # Zeroed, not empty: boundary-clamped lagged lookups may read the slot
    # being written this step with an (exactly) zero Hermite weight, and
    # 0.0 * uninitialized memory could be NaN.
    y = np.zeros((n + 1, dim))
    f = np.zeros((n + 1, dim))
    y[0] = y0
    store = SegmentStore(h, y, f)

    def delayed(tq: float, k: int) -> np.ndarray:
        # Hermite lookup on the k completed segments; history before t=0.
        if tq < 0.0:
            return np.asarray(hist(tq), dtype=float)
        i = int(math.floor(tq / h))
        if i > k - 1:
            i = k - 1
        if i < 0:
            i = 0
        th = (tq - i * h) / h
        t2 = th * th
        t3 = t2 * th
        h00 = 2.0 * t3 - 3.0 * t2 + 1.0
        h10 = t3 - 2.0 * t2 + th
        h01 = -2.0 * t3 + 3.0 * t2
        h11 = t3 - t2
        return (h00 * y[i] + h01 * y[i + 1]
                + h * (h10 * f[i] + h11 * f[i + 1]))

    yk = y0
    for k in range(n):
        t = k * h
        if tau == 0.0:
            k1 = np.asarray(rhs(t, yk, yk), dtype=float)
        else:
            k1 = np.asarray(rhs(t, yk, delayed(t - tau, k)), dtype=float)
        f[k] = k1
        y2 = yk + 0.5 * h * k1
        if tau == 0.0:
            k2 = np.asarray(rhs(t + 0.5 * h, y2, y2), dtype=float)
        else:
            d23 = delayed(t + 0.5 * h - tau, k)
            k2 = np.asarray(rhs(t + 0.5 * h, y2, d23), dtype=float)
        y3 = yk + 0.5 * h * k2
        if tau == 0.0:
            k3 = np.asarray(rhs(t + 0.5 * h, y3, y3), dtype=float)
        else:
            k3 = np.asarray(rhs(t + 0.5 * h, y3, d23), dtype=float)
        y4 = yk + h * k3
        if tau == 0.0:
            k4 = np.asarray(rhs(t + h, y4, y4), dtype=float)
        else:
            k4 = np.asarray(rhs(t + h, y4, delayed(t + h - tau, k)), dtype=float)
        yk = yk + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        y[k + 1] = yk
        if not np.all(np.isfinite(yk)) or np.max(np.abs(yk)) > blow_up:
            raise DivergenceError((k + 1) * h)
    tn = n * h
    if tau == 0.0:
        f[n] = np.asarray(rhs(tn, yk, yk), dtype=float)
    else:
        f[n] = np.asarray(rhs(tn, yk, delayed(tn - tau, n)), dtype=float)

    stride = int(cfg.record_stride)
    samples = y[::stride].copy()
    return Trajectory(
        t0=0.0, h_record=h * stride, samples=samples,
        dimension=dim, dense=store,
    )
