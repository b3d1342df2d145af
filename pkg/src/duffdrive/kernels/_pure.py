"""Pure Python fallback for the integration kernels.

Slow but dependency-free: used when the compiled extension is unavailable
or explicitly disabled. The arithmetic mirrors _core.pyx expression for
expression so both backends produce bit-identical trajectories; keep them
in sync.
"""
from __future__ import annotations

import math


def _lagged_x(y, f, h, tq, last_seg, hist_x):
    """Driver position at time tq from completed segments or the history."""
    if tq < 0.0:
        return hist_x
    u = tq / h
    i = int(math.floor(u))
    if i > last_seg:
        i = last_seg
    if i < 0:
        i = 0
    th = (tq - i * h) / h
    t2 = th * th
    t3 = t2 * th
    h00 = 2.0 * t3 - 3.0 * t2 + 1.0
    h10 = t3 - 2.0 * t2 + th
    h01 = -2.0 * t3 + 3.0 * t2
    h11 = t3 - t2
    return (h00 * y[i, 0] + h01 * y[i + 1, 0]
            + h * (h10 * f[i, 0] + h11 * f[i + 1, 0]))


def integrate_driver(mu, alpha, gamma, tau, h, n_steps, hist_x,
                     x0, v0, blow_up, y, f, stage_x):
    """March the delayed driver over n_steps of width h.

    Same contract as the compiled version: fills y/f/stage_x in place and
    returns -1 on success, else the index of the first offending step.
    """
    x = x0
    v = v0
    y[0, 0] = x
    y[0, 1] = v
    for k in range(n_steps):
        t = k * h
        if tau == 0.0:
            xd1 = x
        else:
            xd1 = _lagged_x(y, f, h, t - tau, k - 1, hist_x)
        k1x = v
        k1v = -mu * v - gamma * xd1 - alpha * x * (1.0 - x * x)
        f[k, 0] = k1x
        f[k, 1] = k1v
        x2s = x + 0.5 * h * k1x
        v2s = v + 0.5 * h * k1v
        if tau == 0.0:
            xd23 = x2s
        else:
            xd23 = _lagged_x(y, f, h, t + 0.5 * h - tau, k - 1, hist_x)
        k2x = v2s
        k2v = -mu * v2s - gamma * xd23 - alpha * x2s * (1.0 - x2s * x2s)
        x3s = x + 0.5 * h * k2x
        v3s = v + 0.5 * h * k2v
        if tau == 0.0:
            xd3 = x3s
        else:
            xd3 = xd23
        k3x = v3s
        k3v = -mu * v3s - gamma * xd3 - alpha * x3s * (1.0 - x3s * x3s)
        x4s = x + h * k3x
        v4s = v + h * k3v
        if tau == 0.0:
            xd4 = x4s
        else:
            xd4 = _lagged_x(y, f, h, t + h - tau, k - 1, hist_x)
        k4x = v4s
        k4v = -mu * v4s - gamma * xd4 - alpha * x4s * (1.0 - x4s * x4s)
        stage_x[k, 0] = x
        stage_x[k, 1] = x2s
        stage_x[k, 2] = x3s
        stage_x[k, 3] = x4s
        x = x + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        v = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        y[k + 1, 0] = x
        y[k + 1, 1] = v
        if (not math.isfinite(x)) or (not math.isfinite(v)) \
                or abs(x) > blow_up or abs(v) > blow_up:
            return k + 1
    # derivative at the final node completes the last dense segment
    if tau == 0.0:
        xd1 = x
    else:
        xd1 = _lagged_x(y, f, h, n_steps * h - tau, n_steps - 1, hist_x)
    f[n_steps, 0] = v
    f[n_steps, 1] = -mu * v - gamma * xd1 - alpha * x * (1.0 - x * x)
    return -1


def integrate_response(mu, alpha, coupling, h, n_steps,
                       x0, v0, blow_up, stage_x, y):
    """March the forced response over n_steps of width h.

    Same contract as the compiled version.
    """
    x = x0
    v = v0
    y[0, 0] = x
    y[0, 1] = v
    for k in range(n_steps):
        k1x = v
        k1v = (-mu * v - alpha * x * (1.0 - x * x)
               + coupling * (stage_x[k, 0] - x))
        x2s = x + 0.5 * h * k1x
        v2s = v + 0.5 * h * k1v
        k2x = v2s
        k2v = (-mu * v2s - alpha * x2s * (1.0 - x2s * x2s)
               + coupling * (stage_x[k, 1] - x2s))
        x3s = x + 0.5 * h * k2x
        v3s = v + 0.5 * h * k2v
        k3x = v3s
        k3v = (-mu * v3s - alpha * x3s * (1.0 - x3s * x3s)
               + coupling * (stage_x[k, 2] - x3s))
        x4s = x + h * k3x
        v4s = v + h * k3v
        k4x = v4s
        k4v = (-mu * v4s - alpha * x4s * (1.0 - x4s * x4s)
               + coupling * (stage_x[k, 3] - x4s))
        x = x + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        v = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        y[k + 1, 0] = x
        y[k + 1, 1] = v
        if (not math.isfinite(x)) or (not math.isfinite(v)) \
                or abs(x) > blow_up or abs(v) > blow_up:
            return k + 1
    return -1
