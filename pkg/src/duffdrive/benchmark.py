"""Backend benchmark: compiled extension versus pure Python fallback.

Run with ``python -m duffdrive.benchmark``. Times the two hot kernels on a
standard workload and verifies that both backends produce identical
trajectories.
"""
from __future__ import annotations

import time

import numpy as np

from .kernels import available_backends
from .models import OscillatorParams
from .solver import SolverConfig


def _run_driver(module, params, cfg, history):
    n = cfg.n_steps
    h = cfg.step_size
    y = np.zeros((n + 1, 2))
    f = np.zeros((n + 1, 2))
    stage_x = np.zeros((n, 4))
    status = module.integrate_driver(
        params.mu, params.alpha, params.gamma, params.tau, h, n,
        history[0], history[0], history[1], 1e6, y, f, stage_x,
    )
    assert status == -1
    return y, stage_x


def _run_responses(module, params, cfg, stage_x, couplings, ic):
    n = cfg.n_steps
    h = cfg.step_size
    out = []
    for c in couplings:
        y = np.zeros((n + 1, 2))
        status = module.integrate_response(
            params.mu, params.alpha, c, h, n, ic[0], ic[1], 1e6, stage_x, y,
        )
        assert status == -1
        out.append(y)
    return out


def main() -> int:
    params = OscillatorParams(tau=2.0)
    cfg = SolverConfig(step_size=0.01, t_final=300.0)
    history = (1.0, 1.0)
    ic = (0.5, 0.5)
    couplings = [0.1 * k for k in range(1, 21)]

    backends = available_backends()
    print(f"workload: driver {cfg.n_steps} steps at tau={params.tau}; "
          f"{len(couplings)} response integrations")
    results = {}
    for name, module in backends.items():
        t0 = time.perf_counter()
        y_drv, stage_x = _run_driver(module, params, cfg, history)
        t_driver = time.perf_counter() - t0
        t0 = time.perf_counter()
        responses = _run_responses(module, params, cfg, stage_x, couplings, ic)
        t_resp = time.perf_counter() - t0
        results[name] = (t_driver, t_resp, y_drv, responses)
        print(f"  {name:12s}  driver {t_driver * 1e3:9.2f} ms   "
              f"responses {t_resp * 1e3:9.2f} ms")

    if len(results) == 2:
        fast = results["compiled"]
        slow = results["pure-python"]
        same_driver = np.array_equal(fast[2], slow[2])
        same_resp = all(
            np.array_equal(a, b) for a, b in zip(fast[3], slow[3])
        )
        print(f"  trajectories bit-identical: driver={same_driver} "
              f"responses={same_resp}")
        total_fast = fast[0] + fast[1]
        total_slow = slow[0] + slow[1]
        print(f"  speedup: {total_slow / total_fast:.1f}x")
    else:
        print("  compiled extension not available; only the fallback was timed")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
