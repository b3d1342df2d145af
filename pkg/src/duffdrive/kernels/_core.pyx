# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled inner loops: driver integration (method of steps, RK4 with
cubic-Hermite lagged lookups) and response integration (RK4 forced by the
driver's stored stage positions).

The arithmetic mirrors kernels/_pure.py expression for expression so the
two backends produce bit-identical trajectories; keep them in sync.
"""
from libc.math cimport floor, fabs, isfinite


cdef inline double _lagged_x(const double[:, ::1] y, const double[:, ::1] f,
                             double h, double tq, Py_ssize_t last_seg,
                             double hist_x) noexcept nogil:
    """Driver position at time tq from completed segments or the history."""
    cdef double u, th, t2, t3, h00, h10, h01, h11
    cdef Py_ssize_t i
    if tq < 0.0:
        return hist_x
    u = tq / h
    i = <Py_ssize_t>floor(u)
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


def integrate_driver(double mu, double alpha, double gamma, double tau,
                     double h, Py_ssize_t n_steps, double hist_x,
                     double x0, double v0, double blow_up,
                     double[:, ::1] y, double[:, ::1] f,
                     double[:, ::1] stage_x):
    """March the delayed driver over n_steps of width h.

    Fills y/f (node states and derivatives, shape (n_steps+1, 2)) and
    stage_x (driver position at the four RK stage points of each step,
    shape (n_steps, 4)). Returns -1 on success, else the index of the
    first step whose endpoint left the allowed range.
    """
    cdef Py_ssize_t k, status = -1
    cdef double t, x, v, xd1, xd23, xd3, xd4
    cdef double k1x, k1v, k2x, k2v, k3x, k3v, k4x, k4v
    cdef double x2s, v2s, x3s, v3s, x4s, v4s
    x = x0
    v = v0
    y[0, 0] = x
    y[0, 1] = v
    with nogil:
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
            if (not isfinite(x)) or (not isfinite(v)) \
                    or fabs(x) > blow_up or fabs(v) > blow_up:
                status = k + 1
                break
        if status < 0:
            # derivative at the final node completes the last dense segment
            if tau == 0.0:
                xd1 = x
            else:
                xd1 = _lagged_x(y, f, h, n_steps * h - tau, n_steps - 1, hist_x)
            f[n_steps, 0] = v
            f[n_steps, 1] = -mu * v - gamma * xd1 - alpha * x * (1.0 - x * x)
    return status


def integrate_response(double mu, double alpha, double coupling,
                       double h, Py_ssize_t n_steps,
                       double x0, double v0, double blow_up,
                       const double[:, ::1] stage_x, double[:, ::1] y):
    """March the forced response over n_steps of width h.

    stage_x holds the driver position at the RK stage points (from
    integrate_driver), which makes the result identical to integrating the
    joint four-component system in one RK4 pass. Returns -1 on success,
    else the index of the first offending step.
    """
    cdef Py_ssize_t k, status = -1
    cdef double x, v
    cdef double k1x, k1v, k2x, k2v, k3x, k3v, k4x, k4v
    cdef double x2s, v2s, x3s, v3s, x4s, v4s
    x = x0
    v = v0
    y[0, 0] = x
    y[0, 1] = v
    with nogil:
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
            if (not isfinite(x)) or (not isfinite(v)) \
                    or fabs(x) > blow_up or fabs(v) > blow_up:
                status = k + 1
                break
    return status
