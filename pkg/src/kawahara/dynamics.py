"""Fourier-Galerkin vector field of the Kawahara equation and its invariants.

The equation is ``u_t = -u u_x - u_xxx + u_xxxxx``.  Transforming it term by
term with ``d/dx -> i k / L`` gives, for ``|k| <= N``,

    dU(k)/dt = -(i k / 2L) (U*U)(k) + i ((k/L)**3 + (k/L)**5) U(k)

The dispersive symbol is purely imaginary, so the linear part is
skew-adjoint and the semidiscrete flow conserves ``integral u**2``.  A
real symbol ``-k**3 - k**5`` (no factor ``i``) would make the linear part
strongly damping/amplifying and break that conservation law; it is not
what the PDE transforms to, and it is not used here.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .spectral import SpectralField, convolve_truncated, l2_norm, differentiate


def dispersion(n_modes, domain_scale=1.0):
    """Scaled wavenumbers ``k/L`` and frequencies ``omega_k = (k/L)**3 + (k/L)**5`` for k = 0..N."""
    kl = np.arange(n_modes + 1) / float(domain_scale)
    return kl, kl ** 3 + kl ** 5


def max_frequency(n_modes, domain_scale=1.0):
    q = n_modes / float(domain_scale)
    return q ** 3 + q ** 5


def galerkin_rhs(u, nonlinear=True, method="fft"):
    """Right-hand side of the coefficient ODE system.

    ``nonlinear=False`` drops the quadratic term (linear dispersive flow).
    ``method`` picks the convolution route, see ``convolve_truncated``.
    """
    kl, omega = dispersion(u.n_modes, u.domain_scale)
    h = u.half
    if method == "kernel":
        return SpectralField.from_half(kernels.rhs_half(h, kl, omega, float(nonlinear)), u.domain_scale)
    out = 1j * omega * h
    if nonlinear:
        out += -0.5j * kl * convolve_truncated(u, u, method=method).half
    out[0] = 0.0
    return SpectralField.from_half(out, u.domain_scale)


@dataclass(frozen=True)
class Invariants:
    """``i1 = int u``, ``i2 = int u**2``, ``i3 = int (u**3/3 - u_x**2 - u_xx**2)`` over one period."""

    i1: float
    i2: float
    i3: float

    def as_tuple(self):
        return (self.i1, self.i2, self.i3)


def cubic_mean(u):
    """``(U*U*U)(0)``, the mean of ``u**3``.

    Only modes ``|k| <= N`` of ``u**2`` pair with ``U(-k)``, so the truncated
    square is already exact for this.
    """
    sq = convolve_truncated(u, u, method="fft")
    return float(np.real(np.vdot(u.coeffs, sq.coeffs)))


def invariants(u):
    p = u.period
    i1 = p * float(u[0].real)
    i2 = l2_norm(u) ** 2
    i3 = p * cubic_mean(u) / 3.0 - l2_norm(differentiate(u, 1)) ** 2 - l2_norm(differentiate(u, 2)) ** 2
    return Invariants(i1, i2, i3)
