"""Measured quantities extracted from trajectories.

All asymptotic measures operate on the trailing third of the series unless
stated otherwise, which is where the transients of the standard runs have
died down.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Fraction of the series treated as the asymptotic window.
TRAILING_WINDOW = 1.0 / 3.0

#: Half peak-to-peak amplitude below which a tail counts as converged.
FIXED_POINT_AMPLITUDE = 0.05

#: Relative spread of successive maxima below which a tail counts as periodic.
PERIODIC_MAXIMA_SPREAD = 0.02

#: A spectral peak must exceed this multiple of the median magnitude.
SPECTRAL_SIGNIFICANCE = 10.0

#: Zero-padding factor of the spectrum (reduces peak-interpolation bias).
SPECTRAL_PADDING = 8

#: Delay values separating the four driver regimes.
REGION_BOUNDARIES = (1.53, 2.35, 3.05)

#: Trailing window (time units) for extrema when no cycle period is known.
APERIODIC_EXTREMA_WINDOW = 50.0

MIN_SPECTRUM_SAMPLES = 256


@dataclass(frozen=True)
class ObservableRecord:
    """Per-(tau, coupling) summary row of a sweep or slice.

    ``omega1``/``omega2`` are None when no dominant spectral line exists;
    response-derived fields are None on rows whose integration diverged
    (``failed`` is then True).
    """

    tau: float
    coupling: float
    a_x1: float | None
    a_x2c: float | None
    mean_dist: float | None
    mean_dist_c0: float | None
    omega1: float | None
    omega2: float | None
    region: str
    behavior: str | None
    failed: bool = False


@dataclass(frozen=True)
class ExtremaDiagram:
    """Local maxima and minima of the asymptotic oscillation."""

    maxima: np.ndarray
    minima: np.ndarray


def _trailing(series: np.ndarray, fraction: float) -> np.ndarray:
    n = len(series)
    m = max(2, int(round(n * fraction)))
    return series[n - m:]


def _local_maxima(w: np.ndarray) -> np.ndarray:
    inner = w[1:-1]
    mask = (inner > w[:-2]) & (inner > w[2:])
    return inner[mask]


def _local_minima(w: np.ndarray) -> np.ndarray:
    inner = w[1:-1]
    mask = (inner < w[:-2]) & (inner < w[2:])
    return inner[mask]


def amplitude(series, window: float = TRAILING_WINDOW) -> float:
    """Half peak-to-peak over the trailing window.

    Zero for a converged (constant) tail; invariant under constant offsets
    and linear in the series scale.
    """
    if not 0.0 < window <= 1.0:
        raise ValueError(f"window must lie in (0, 1], got {window}")
    series = np.asarray(series, dtype=float)
    if series.size == 0:
        raise ValueError("series is empty")
    w = _trailing(series, window)
    return 0.5 * (float(w.max()) - float(w.min()))


def extrema_diagram(series, h_record: float, n_periods: int = 5,
                    omega_hint: float | None = None) -> ExtremaDiagram:
    """Local extrema over a trailing window of n_periods cycles.

    With no ``omega_hint`` (aperiodic signal) a fixed window of
    ``APERIODIC_EXTREMA_WINDOW`` time units is used instead.
    """
    series = np.asarray(series, dtype=float)
    if omega_hint is not None and omega_hint > 0.0:
        span = n_periods * (2.0 * math.pi / omega_hint)
    else:
        span = APERIODIC_EXTREMA_WINDOW
    m = int(round(span / h_record)) + 1
    if m > len(series):
        raise ValueError(
            f"window of {span:.6g} time units needs {m} samples, series has "
            f"{len(series)}"
        )
    w = series[len(series) - m:]
    return ExtremaDiagram(maxima=_local_maxima(w), minima=_local_minima(w))


def dominant_frequency(series, h_record: float) -> float | None:
    """Angular frequency of the strongest spectral line of the tail.

    Magnitude spectrum of the mean-subtracted trailing third (zero padded,
    no taper), peak bin refined by three-point parabolic interpolation.
    Returns None when the peak does not rise above
    ``SPECTRAL_SIGNIFICANCE`` times the median magnitude, i.e. when no
    dominant line exists.
    """
    series = np.asarray(series, dtype=float)
    n = len(series)
    if n < MIN_SPECTRUM_SAMPLES:
        raise ValueError(
            f"need at least {MIN_SPECTRUM_SAMPLES} samples, got {n}"
        )
    m = n // 3
    w = series[n - m:]
    w = w - w.mean()
    nfft = 1 << int(math.ceil(math.log2(m * SPECTRAL_PADDING)))
    mag = np.abs(np.fft.rfft(w, nfft))
    if mag.size < 3:
        return None
    k = 1 + int(np.argmax(mag[1:]))
    peak = float(mag[k])
    median = float(np.median(mag[1:]))
    if peak == 0.0 or peak < SPECTRAL_SIGNIFICANCE * median:
        return None
    if k + 1 < mag.size:
        a, b, c = float(mag[k - 1]), peak, float(mag[k + 1])
        den = a - 2.0 * b + c
        delta = 0.0 if den == 0.0 else 0.5 * (a - c) / den
    else:
        delta = 0.0
    return 2.0 * math.pi * (k + delta) / (nfft * h_record)


def mean_distance(x1_series, x2_series) -> float:
    """Mean of |x1 - x2| over the final third of the samples."""
    x1 = np.asarray(x1_series, dtype=float)
    x2 = np.asarray(x2_series, dtype=float)
    if x1.shape != x2.shape:
        raise ValueError(
            f"series lengths differ: {x1.shape} vs {x2.shape}"
        )
    n = len(x1)
    m = max(1, n // 3)
    return float(np.mean(np.abs(x1[n - m:] - x2[n - m:])))


def classify_region(tau: float) -> str:
    """Driver regime label for a delay value; ties go to the upper region."""
    if not tau > 0.0:
        raise ValueError(f"tau must be positive, got {tau}")
    b1, b2, b3 = REGION_BOUNDARIES
    if tau < b1:
        return "I"
    if tau < b2:
        return "II"
    if tau < b3:
        return "III"
    return "IV"


def classify_behavior(series, wells) -> str:
    """Asymptotic behavior label of one oscillator's position series.

    Converged tails (amplitude below ``FIXED_POINT_AMPLITUDE``) are
    "fixed-point"; tails that stay on one side of the inter-well midpoint
    are "single-well-periodic"; the rest are cross-well, split into
    periodic and aperiodic by the relative spread of successive maxima.
    """
    series = np.asarray(series, dtype=float)
    if amplitude(series) < FIXED_POINT_AMPLITUDE:
        return "fixed-point"
    wells = np.asarray(wells, dtype=float)
    midpoint = 0.5 * (float(wells.min()) + float(wells.max()))
    w = _trailing(series, TRAILING_WINDOW)
    if w.min() > midpoint or w.max() < midpoint:
        return "single-well-periodic"
    maxima = _local_maxima(w)
    if len(maxima) >= 2:
        mean = float(np.mean(maxima))
        if abs(mean) > 1e-12:
            spread = float(np.std(maxima)) / abs(mean)
            if spread < PERIODIC_MAXIMA_SPREAD:
                return "cross-well-periodic"
    return "cross-well-aperiodic"
