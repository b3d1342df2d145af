"""Linear stability of the driver wells against the delay.

Linearizing the driver about a well x* (delayed term frozen at x*) gives

    lambda^2 + mu*lambda + K + gamma*exp(-lambda*tau) = 0,
    K = alpha*(1 - 3*x*^2).

On the critical curve lambda = i*omega, and splitting real and imaginary
parts then squaring and adding eliminates tau:

    (omega^2 - K)^2 + (mu*omega)^2 = gamma^2,

a quadratic in omega^2. Each positive root omega yields candidate critical
delays tau = arccos((omega^2 - K)/gamma)/omega on the principal branch and
(2*pi - arccos(...))/omega on the complementary one; both are reported
because the sine equation's sign depends on conventions that the delay
values themselves disambiguate against simulation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .models import OscillatorParams, fixed_points


@dataclass(frozen=True)
class CriticalPoint:
    """A pure-imaginary crossing of the linearized driver spectrum."""

    omega: float
    tau_c: float
    stiffness: float
    residual: float

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if not self.tau_c > 0:
            raise ValueError(f"tau_c must be positive, got {self.tau_c}")


def linearized_stiffness(x_star: float, p: OscillatorParams) -> float:
    """Non-delayed stiffness K of the linearization about x_star."""
    return p.alpha * (1.0 - 3.0 * x_star * x_star)


def critical_frequencies(p: OscillatorParams, stiffness: float) -> list[float]:
    """Positive roots omega of (omega^2 - K)^2 + (mu*omega)^2 = gamma^2.

    Solved as a quadratic in s = omega^2; returns the real positive
    frequencies sorted ascending (empty when none exist).
    """
    if p.gamma == 0.0:
        raise ValueError("critical frequencies require gamma != 0")
    k = stiffness
    b = p.mu * p.mu - 2.0 * k
    c = k * k - p.gamma * p.gamma
    disc = b * b - 4.0 * c
    if disc < 0.0:
        return []
    r = math.sqrt(disc)
    out = []
    for s in ((-b - r) / 2.0, (-b + r) / 2.0):
        if s > 0.0:
            out.append(math.sqrt(s))
    out.sort()
    return out


def critical_delay(omega: float, p: OscillatorParams, stiffness: float,
                   branch: str = "principal") -> float:
    """Critical delay for a crossing frequency omega.

    tau = arccos((omega^2 - K)/gamma)/omega on the principal branch;
    branch="complement" selects (2*pi - arccos(...))/omega.
    """
    if p.gamma == 0.0:
        raise ValueError("critical delay requires gamma != 0")
    c = (omega * omega - stiffness) / p.gamma
    if not -1.0 <= c <= 1.0:
        # roots of the squared-sum condition satisfy |c| <= 1 up to rounding
        if abs(c) <= 1.0 + 1e-12:
            c = 1.0 if c > 0.0 else -1.0
        else:
            raise ValueError(
                f"(omega^2 - K)/gamma = {c:.6g} lies outside [-1, 1]; "
                "no delay solves the crossing condition"
            )
    theta = math.acos(c)
    if branch == "principal":
        return theta / omega
    if branch == "complement":
        return (2.0 * math.pi - theta) / omega
    raise ValueError(f"branch must be 'principal' or 'complement', got {branch!r}")


def _residual(omega: float, p: OscillatorParams, stiffness: float) -> float:
    d = omega * omega - stiffness
    return d * d + (p.mu * omega) ** 2 - p.gamma * p.gamma


def critical_points(p: OscillatorParams) -> list[CriticalPoint]:
    """All critical points of the well linearizations, sorted by delay.

    Both wells share one linearization (K is even in x*), so duplicate
    stiffnesses are collapsed. Each crossing frequency contributes its two
    arccos branches. Returns [] when there is no delayed feedback or no
    real crossing.
    """
    if p.gamma == 0.0:
        return []
    fp = fixed_points(p)
    if fp.driver_wells is None:
        return []
    stiffnesses = []
    for x_star in fp.driver_wells:
        k = linearized_stiffness(x_star, p)
        if k not in stiffnesses:
            stiffnesses.append(k)
    points = []
    for k in stiffnesses:
        for omega in critical_frequencies(p, k):
            res = _residual(omega, p, k)
            for branch in ("principal", "complement"):
                tau_c = critical_delay(omega, p, k, branch)
                if tau_c > 0.0:
                    points.append(CriticalPoint(
                        omega=omega, tau_c=tau_c, stiffness=k, residual=res,
                    ))
    points.sort(key=lambda cp: (cp.tau_c, cp.omega))
    return points
