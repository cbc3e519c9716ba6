"""numba kernels; same signatures and semantics as ``numpy_impl``.

The truncated convolution is always direct summation here: for the sizes
the steppers see it is faster than calling out to an FFT, and numba has no
FFT of its own.
"""
import numpy as np
from numba import njit

from .numpy_impl import STATUS_BLOWUP, STATUS_NONCONVERGED, STATUS_OK

_opts = dict(cache=True, nogil=True)


@njit(**_opts)
def _mode(c, m):
    if m >= 0:
        return c[m]
    return np.conj(c[-m])


@njit(**_opts)
def _conv_into(a, b, out):
    n = a.shape[0] - 1
    for k in range(n + 1):
        s = 0j
        for m in range(k - n, n + 1):
            s += _mode(a, m) * _mode(b, k - m)
        out[k] = s
    out[0] = out[0].real


@njit(**_opts)
def conv_direct(a, b):
    out = np.empty_like(a)
    _conv_into(a, b, out)
    return out


conv_half = conv_direct


@njit(**_opts)
def _nonlinear_into(u, kl, nl, out):
    _conv_into(u, u, out)
    out[0] = 0.0
    for k in range(1, u.shape[0]):
        out[k] = (-0.5j * nl * kl[k]) * out[k]


@njit(**_opts)
def nonlinear_half(u, kl, nl):
    out = np.empty_like(u)
    _nonlinear_into(u, kl, nl, out)
    return out


@njit(**_opts)
def _rhs_into(u, kl, omega, nl, out):
    _nonlinear_into(u, kl, nl, out)
    for k in range(1, u.shape[0]):
        out[k] += 1j * omega[k] * u[k]


@njit(**_opts)
def rhs_half(u, kl, omega, nl):
    out = np.empty_like(u)
    _rhs_into(u, kl, omega, nl, out)
    return out


@njit(**_opts)
def l2_half(c, period):
    s = abs(c[0]) ** 2
    for k in range(1, c.shape[0]):
        s += 2.0 * (c[k].real ** 2 + c[k].imag ** 2)
    return np.sqrt(period * s)


@njit(**_opts)
def blown_up(c, limit):
    for k in range(c.shape[0]):
        a = abs(c[k])
        if not np.isfinite(a) or a > limit:
            return True
    return False


@njit(**_opts)
def rk4_advance(u, dt, nsteps, kl, omega, nl, limit):
    n1 = u.shape[0]
    u = u.copy()
    k1 = np.empty_like(u)
    k2 = np.empty_like(u)
    k3 = np.empty_like(u)
    k4 = np.empty_like(u)
    tmp = np.empty_like(u)
    h = 0.5 * dt
    for step in range(nsteps):
        _rhs_into(u, kl, omega, nl, k1)
        for k in range(n1):
            tmp[k] = u[k] + h * k1[k]
        _rhs_into(tmp, kl, omega, nl, k2)
        for k in range(n1):
            tmp[k] = u[k] + h * k2[k]
        _rhs_into(tmp, kl, omega, nl, k3)
        for k in range(n1):
            tmp[k] = u[k] + dt * k3[k]
        _rhs_into(tmp, kl, omega, nl, k4)
        for k in range(n1):
            u[k] = u[k] + (dt / 6.0) * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k])
        if blown_up(u, limit):
            return u, step + 1
    return u, -1


@njit(**_opts)
def leapfrog_advance(prev, curr, dt, nsteps, kl, omega, nl, limit):
    n1 = prev.shape[0]
    prev = prev.copy()
    curr = curr.copy()
    f = np.empty_like(curr)
    for step in range(nsteps):
        _rhs_into(curr, kl, omega, nl, f)
        for k in range(n1):
            nxt = prev[k] + (2.0 * dt) * f[k]
            prev[k] = curr[k]
            curr[k] = nxt
        if blown_up(curr, limit):
            return prev, curr, step + 1
    return prev, curr, -1


@njit(**_opts)
def cn_advance(u, dt, nsteps, kl, omega, nl, tol, max_iter, period, limit):
    n1 = u.shape[0]
    u = u.copy()
    denom = 1.0 - 0.5j * dt * omega
    w = np.empty_like(u)
    nw = np.empty_like(u)
    r = np.empty_like(u)
    max_iters = 0
    max_res = 0.0
    iters = 0
    res = 0.0
    for step in range(nsteps):
        _nonlinear_into(u, kl, nl, nw)
        iters = 0
        while True:
            iters += 1
            for k in range(n1):
                w[k] = (u[k] + (0.5 * dt) * nw[k]) / denom[k]
            _nonlinear_into(w, kl, nl, nw)
            for k in range(n1):
                r[k] = 2.0 * denom[k] * w[k] - 2.0 * u[k] - dt * nw[k]
            res = l2_half(r, period)
            if res <= tol:
                break
            if iters >= max_iter or not np.isfinite(res):
                return (u, STATUS_NONCONVERGED, step + 1, max(max_iters, iters),
                        max(max_res, res), iters, res)
        for k in range(n1):
            u[k] = 2.0 * w[k] - u[k]
        max_iters = max(max_iters, iters)
        max_res = max(max_res, res)
        if blown_up(u, limit):
            return u, STATUS_BLOWUP, step + 1, max_iters, max_res, iters, res
    return u, STATUS_OK, -1, max_iters, max_res, iters, res
