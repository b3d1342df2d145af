"""Delayed-Duffing driver / plain-Duffing response simulation toolkit.

A fixed-step method-of-steps integrator with dense output drives the pair;
observables, linear stability analysis and (coupling, delay) sweep tools
extract resonance, synchronization and delay-transfer measures. The hot
integration loops live in a compiled extension with a pure Python fallback
selected at import time (see duffdrive.kernels.BACKEND).
"""
from .kernels import BACKEND
from .models import (
    CoupledState,
    FixedPoints,
    OscillatorParams,
    coupled_rhs,
    driver_rhs,
    fixed_points,
    potential,
    response_rhs,
)
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
from .simulate import DriverRun, PairRun, simulate_driver, simulate_pair, simulate_response
from .solver import (
    DivergenceError,
    HistoryFunction,
    HistorySegment,
    SegmentStore,
    SolverConfig,
    Trajectory,
    integrate,
    sample_delayed,
)
from .stability import (
    CriticalPoint,
    critical_delay,
    critical_frequencies,
    critical_points,
    linearized_stiffness,
)
from .sweep import (
    GridRange,
    Peak,
    SweepGrid,
    TransferRecord,
    delay_transfer_report,
    find_peaks,
    run_slice,
    run_sweep,
    transfer_observables,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CoupledState",
    "CriticalPoint",
    "DivergenceError",
    "DriverRun",
    "ExtremaDiagram",
    "FixedPoints",
    "GridRange",
    "HistoryFunction",
    "HistorySegment",
    "ObservableRecord",
    "OscillatorParams",
    "PairRun",
    "Peak",
    "SegmentStore",
    "SolverConfig",
    "SweepGrid",
    "Trajectory",
    "TransferRecord",
    "amplitude",
    "classify_behavior",
    "classify_region",
    "coupled_rhs",
    "critical_delay",
    "critical_frequencies",
    "critical_points",
    "delay_transfer_report",
    "dominant_frequency",
    "driver_rhs",
    "extrema_diagram",
    "find_peaks",
    "fixed_points",
    "integrate",
    "linearized_stiffness",
    "mean_distance",
    "potential",
    "response_rhs",
    "run_slice",
    "run_sweep",
    "sample_delayed",
    "simulate_driver",
    "simulate_pair",
    "simulate_response",
    "transfer_observables",
    "__version__",
]
