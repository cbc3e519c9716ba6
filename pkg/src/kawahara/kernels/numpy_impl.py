"""Pure-numpy kernels.

Every kernel works on the half spectrum ``c[0..N]`` of a real field; the
negative modes are implied by Hermitian symmetry.  Signatures match
``numba_impl`` exactly so the two backends are interchangeable.
"""
import numpy as np

# np.convolve beats a padded FFT product below this size.
FFT_THRESHOLD = 48

STATUS_OK = 0
STATUS_BLOWUP = 1
STATUS_NONCONVERGED = 2


def good_fft_size(n):
    """Smallest even 2^a 3^b 5^c integer >= n."""
    m = max(2, n)
    while True:
        if m % 2 == 0:
            r = m
            for p in (2, 3, 5):
                while r % p == 0:
                    r //= p
            if r == 1:
                return m
        m += 1


def full_from_half(c):
    return np.concatenate((np.conj(c[:0:-1]), c))


def conv_direct(a, b):
    """Truncated convolution by direct summation over m + n = k."""
    n = a.shape[0] - 1
    full = np.convolve(full_from_half(a), full_from_half(b))
    out = full[2 * n:3 * n + 1].copy()
    out[0] = out[0].real
    return out


def conv_fft(a, b):
    """Truncated convolution through a product on a >= 3N+1 point grid."""
    n = a.shape[0] - 1
    m = good_fft_size(3 * n + 1)
    pa = np.zeros(m // 2 + 1, dtype=np.complex128)
    pb = np.zeros(m // 2 + 1, dtype=np.complex128)
    pa[:n + 1] = a
    pb[:n + 1] = b
    ua = np.fft.irfft(pa, n=m) * m
    ub = np.fft.irfft(pb, n=m) * m
    return np.fft.rfft(ua * ub)[:n + 1] / m


def conv_half(a, b):
    if a.shape[0] - 1 > FFT_THRESHOLD:
        return conv_fft(a, b)
    return conv_direct(a, b)


def nonlinear_half(u, kl, nl):
    """Coefficients of -P_N(u u_x) = -(ik/2L) (u*u)(k), scaled by nl."""
    out = (-0.5j * nl) * kl * conv_half(u, u)
    out[0] = 0.0
    return out


def rhs_half(u, kl, omega, nl):
    out = nonlinear_half(u, kl, nl)
    out += 1j * omega * u
    out[0] = 0.0
    return out


def l2_half(c, period):
    s = abs(c[0]) ** 2 + 2.0 * np.sum(np.abs(c[1:]) ** 2)
    return np.sqrt(period * s)


def blown_up(c, limit):
    a = np.abs(c)
    return not np.all(np.isfinite(a)) or a.max() > limit


def rk4_advance(u, dt, nsteps, kl, omega, nl, limit):
    """Advance ``nsteps`` classical RK4 steps; returns (u, failed_step)."""
    u = u.copy()
    h = 0.5 * dt
    for step in range(nsteps):
        k1 = rhs_half(u, kl, omega, nl)
        k2 = rhs_half(u + h * k1, kl, omega, nl)
        k3 = rhs_half(u + h * k2, kl, omega, nl)
        k4 = rhs_half(u + dt * k3, kl, omega, nl)
        u = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if blown_up(u, limit):
            return u, step + 1
    return u, -1


def leapfrog_advance(prev, curr, dt, nsteps, kl, omega, nl, limit):
    """Advance the two-level leap-frog recursion; returns (prev, curr, failed_step)."""
    prev = prev.copy()
    curr = curr.copy()
    for step in range(nsteps):
        nxt = prev + (2.0 * dt) * rhs_half(curr, kl, omega, nl)
        prev, curr = curr, nxt
        if blown_up(curr, limit):
            return prev, curr, step + 1
    return prev, curr, -1


def cn_advance(u, dt, nsteps, kl, omega, nl, tol, max_iter, period, limit):
    """Crank-Nicolson steps with a linearly implicit fixed-point solve.

    Iterates on the midpoint W: the dispersive part is inverted exactly
    (it is diagonal), the quadratic term is lagged.  Returns
    ``(u, status, failed_step, max_iters, max_residual, last_iters, last_residual)``.
    """
    u = u.copy()
    denom = 1.0 - 0.5j * dt * omega
    max_iters = 0
    max_res = 0.0
    iters = 0
    res = 0.0
    for step in range(nsteps):
        w = u
        nw = nonlinear_half(w, kl, nl)
        iters = 0
        while True:
            iters += 1
            w = (u + (0.5 * dt) * nw) / denom
            nw = nonlinear_half(w, kl, nl)
            # residual of U^{m+1} - U^m - dt F(W) with U^{m+1} = 2W - U^m
            res = l2_half(2.0 * denom * w - 2.0 * u - dt * nw, period)
            if res <= tol:
                break
            if iters >= max_iter or not np.isfinite(res):
                return u, STATUS_NONCONVERGED, step + 1, max(max_iters, iters), max(max_res, res), iters, res
        u = 2.0 * w - u
        max_iters = max(max_iters, iters)
        max_res = max(max_res, res)
        if blown_up(u, limit):
            return u, STATUS_BLOWUP, step + 1, max_iters, max_res, iters, res
    return u, STATUS_OK, -1, max_iters, max_res, iters, res
