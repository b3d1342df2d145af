"""Vector fields, potentials and fixed points of the coupled pair.

The driver is a double-well Duffing oscillator whose linear stiffness term
acts with a constant time lag tau; the response is an ordinary Duffing
oscillator forced one-way through the coupling term C*(x1 - x2):

    x1'' + mu*x1' + gamma*x1(t - tau) + alpha*x1*(1 - x1^2) = 0
    x2'' + mu*x2' + alpha*x2*(1 - x2^2) = C*(x1 - x2)

The driver never sees the response, so its trajectory is independent of C.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_MU = 0.01
DEFAULT_ALPHA = -1.0
DEFAULT_GAMMA = -0.5

#: Boundary data used by the command line tools unless overridden.
DEFAULT_HISTORY = (1.0, 1.0)
DEFAULT_IC = (0.5, 0.5)


@dataclass(frozen=True)
class OscillatorParams:
    """Physical constants shared by the driver/response pair.

    mu is the damping, alpha the cubic stiffness coefficient, gamma the
    delayed-stiffness coefficient, tau the lag and coupling the one-way
    forcing strength.
    """

    mu: float = DEFAULT_MU
    alpha: float = DEFAULT_ALPHA
    gamma: float = DEFAULT_GAMMA
    tau: float = 0.0
    coupling: float = 0.0

    def __post_init__(self):
        if self.mu < 0:
            raise ValueError(f"damping mu must be >= 0, got {self.mu}")
        if self.tau < 0:
            raise ValueError(f"delay tau must be >= 0, got {self.tau}")
        if self.coupling < 0:
            raise ValueError(
                f"coupling must be >= 0, got {self.coupling}"
            )


@dataclass(frozen=True)
class CoupledState:
    """Instantaneous state (position, velocity) of both oscillators."""

    x1: float
    v1: float
    x2: float
    v2: float

    def __post_init__(self):
        for name in ("x1", "v1", "x2", "v2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"state component {name} is not finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.v1, self.x2, self.v2])

    @classmethod
    def from_array(cls, a) -> "CoupledState":
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))


def driver_rhs(t, s, x1_delayed, p: OscillatorParams) -> np.ndarray:
    """Time derivative of the driver state ``s = (x1, v1)``.

    ``x1_delayed`` is the driver position one lag in the past. Pure
    arithmetic; the expression order matches the compiled kernels so both
    code paths produce bit-identical trajectories.
    """
    x1, v1 = s[0], s[1]
    a1 = -p.mu * v1 - p.gamma * x1_delayed - p.alpha * x1 * (1.0 - x1 * x1)
    return np.array([v1, a1])


def response_rhs(t, s, x1, p: OscillatorParams) -> np.ndarray:
    """Time derivative of the response state ``s = (x2, v2)``.

    ``x1`` is the instantaneous driver position entering the forcing term
    ``coupling * (x1 - x2)``.
    """
    x2, v2 = s[0], s[1]
    a2 = (-p.mu * v2 - p.alpha * x2 * (1.0 - x2 * x2)
          + p.coupling * (x1 - x2))
    return np.array([v2, a2])


def coupled_rhs(t, s, x1_delayed, p: OscillatorParams) -> np.ndarray:
    """Derivative of the joint state ``(x1, v1, x2, v2)``.

    Concatenation of :func:`driver_rhs` and :func:`response_rhs`; the
    driver block never reads the response components.
    """
    x1, v1, x2, v2 = s[0], s[1], s[2], s[3]
    a1 = -p.mu * v1 - p.gamma * x1_delayed - p.alpha * x1 * (1.0 - x1 * x1)
    a2 = (-p.mu * v2 - p.alpha * x2 * (1.0 - x2 * x2)
          + p.coupling * (x1 - x2))
    return np.array([v1, a1, v2, a2])


@dataclass(frozen=True)
class FixedPoints:
    """Equilibria of the pair: well bottoms plus the shared origin.

    ``driver_wells`` / ``response_wells`` are ``(negative, positive)``
    pairs, or ``None`` when the corresponding potential has no double well.
    """

    driver_wells: tuple[float, float] | None
    response_wells: tuple[float, float] | None
    origin: float = 0.0


def fixed_points(p: OscillatorParams) -> FixedPoints:
    """Nontrivial equilibria of driver and response.

    With the delayed term frozen at the equilibrium the driver wells sit at
    +-sqrt((alpha + gamma)/alpha) and the response wells at +-1. Either
    pair may be absent (``None``) for parameters without a double well.
    """
    driver = None
    if p.alpha != 0.0:
        ratio = (p.alpha + p.gamma) / p.alpha
        if ratio > 0.0:
            r = math.sqrt(ratio)
            driver = (-r, r)
    response = (-1.0, 1.0) if p.alpha != 0.0 else None
    return FixedPoints(driver_wells=driver, response_wells=response)


def potential(x, p: OscillatorParams, which: str = "driver"):
    """Potential energy of one oscillator at position ``x``.

    Defined as the antiderivative of the conservative force (velocity and
    coupling terms dropped, the delayed position frozen at ``x``), with
    V(0) = 0:

        V_response(x) = alpha*x^2/2 - alpha*x^4/4
        V_driver(x)   = V_response(x) + gamma*x^2/2

    so that V'(x) equals minus the position-dependent force in the
    equations of motion and the minima land exactly on the fixed points.
    Accepts scalars or arrays.
    """
    x = np.asarray(x, dtype=float)
    v = p.alpha * x * x / 2.0 - p.alpha * x ** 4 / 4.0
    if which == "driver":
        v = v + p.gamma * x * x / 2.0
    elif which != "response":
        raise ValueError(f"which must be 'driver' or 'response', got {which!r}")
    if v.ndim == 0:
        return float(v)
    return v
