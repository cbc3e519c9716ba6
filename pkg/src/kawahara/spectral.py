"""Truncated Fourier representation of real periodic functions.

A field on the torus of period ``2*pi*L`` is stored as the coefficients
``c(k)``, ``k = -N..N``, of

    u(x) = sum_k c(k) exp(i k x / L),      x in [-pi L, pi L).

Norm convention: ``l2_norm`` carries the full measure, so
``l2_norm(u)**2 == integral of u**2 over one period`` (Parseval with the
factor ``2*pi*L``).  ``sobolev_norm`` keeps the unscaled coefficient sum
``sum (1 + (k/L)**2)**r |c(k)|**2`` with no period factor.  With ``L = 1``
the grid ``[-pi, pi)`` and the period-``2*pi`` problem starting at 0 are the
same torus.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels

HERMITIAN_RTOL = 1e-10
IMAG_RTOL = 1e-10


def _symmetry_tol(c):
    return HERMITIAN_RTOL * (1.0 + (np.max(np.abs(c)) if c.size else 0.0))


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Coefficients ``coeffs[k + N]`` of a real field, ``k = -N..N``.

    The array is copied and frozen on construction.  Hermitian symmetry is
    checked to ``1e-10 * (1 + max|c|)``; pass coefficients through
    :meth:`from_coeffs` with ``symmetrize=True`` to enforce it instead.
    """

    coeffs: np.ndarray
    domain_scale: float = 1.0

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128)
        if c.ndim != 1 or c.size < 3 or c.size % 2 == 0:
            raise ValueError(f"coeffs must have odd length 2N+1 >= 3, got shape {c.shape}")
        if not self.domain_scale > 0:
            raise ValueError(f"domain_scale must be positive, got {self.domain_scale}")
        err = np.max(np.abs(c - np.conj(c[::-1])))
        if not err <= _symmetry_tol(c):
            raise ValueError(f"coefficients violate Hermitian symmetry (max defect {err:.3e})")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "domain_scale", float(self.domain_scale))

    @classmethod
    def from_coeffs(cls, coeffs, domain_scale=1.0, symmetrize=False):
        c = np.asarray(coeffs, dtype=np.complex128)
        if symmetrize:
            c = 0.5 * (c + np.conj(c[::-1]))
        return cls(c, domain_scale)

    @classmethod
    def from_half(cls, half, domain_scale=1.0):
        """Build from the non-negative modes ``c(0..N)``; ``c(0)`` is made real."""
        h = np.array(half, dtype=np.complex128)
        h[0] = h[0].real
        return cls(kernels.full_from_half(h), domain_scale)

    @classmethod
    def zeros(cls, n_modes, domain_scale=1.0):
        return cls(np.zeros(2 * n_modes + 1, dtype=np.complex128), domain_scale)

    @property
    def n_modes(self):
        return (self.coeffs.size - 1) // 2

    @property
    def half(self):
        """Writable copy of ``c(0..N)``."""
        return self.coeffs[self.n_modes:].copy()

    @property
    def period(self):
        return 2.0 * np.pi * self.domain_scale

    @property
    def wavenumbers(self):
        """Integer mode indices ``-N..N``."""
        n = self.n_modes
        return np.arange(-n, n + 1)

    def __getitem__(self, k):
        n = self.n_modes
        if not -n <= k <= n:
            raise IndexError(f"mode {k} outside -{n}..{n}")
        return self.coeffs[k + n]

    def _like(self, coeffs):
        return SpectralField(coeffs, self.domain_scale)

    def __add__(self, other):
        _check_compatible(self, other)
        return self._like(self.coeffs + other.coeffs)

    def __sub__(self, other):
        _check_compatible(self, other)
        return self._like(self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return self._like(self.coeffs * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return self._like(-self.coeffs)

    def resized(self, n_modes):
        """Zero-pad or truncate to ``n_modes`` (truncation is P_N on coefficients)."""
        n = self.n_modes
        out = np.zeros(2 * n_modes + 1, dtype=np.complex128)
        m = min(n, n_modes)
        out[n_modes - m:n_modes + m + 1] = self.coeffs[n - m:n + m + 1]
        return self._like(out)


@dataclass(frozen=True, eq=False)
class PhysicalSamples:
    """Real samples at ``x_j = -pi L + 2 pi L j / M``, ``j = 0..M-1``."""

    values: np.ndarray
    domain_scale: float = 1.0

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("values must be a non-empty 1-D array")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "domain_scale", float(self.domain_scale))

    @property
    def size(self):
        return self.values.size

    @property
    def x(self):
        return grid(self.size, self.domain_scale)

    @classmethod
    def from_function(cls, func, m, domain_scale=1.0):
        return cls(func(grid(m, domain_scale)), domain_scale)


def grid(m, domain_scale=1.0):
    """Equispaced points ``-pi L + 2 pi L j / M``."""
    return domain_scale * (-np.pi + 2.0 * np.pi * np.arange(m) / m)


def _check_compatible(a, b):
    if a.n_modes != b.n_modes:
        raise ValueError(f"mode counts differ: {a.n_modes} vs {b.n_modes}")
    if a.domain_scale != b.domain_scale:
        raise ValueError(f"domain scales differ: {a.domain_scale} vs {b.domain_scale}")


def project(samples, n_modes):
    """Discrete L2 projection of grid samples onto modes ``|k| <= N``."""
    m = samples.size
    if m < 2 * n_modes + 1:
        raise ValueError(f"need at least 2N+1 = {2 * n_modes + 1} samples, got {m}")
    f = np.fft.fft(samples.values) / m
    k = np.arange(-n_modes, n_modes + 1)
    # the grid starts at -pi L, which shifts mode k by exp(i k pi)
    c = f[k % m] * np.where(k % 2 == 0, 1.0, -1.0)
    return SpectralField.from_coeffs(c, samples.domain_scale, symmetrize=True)


def evaluate(field, m):
    """Values of the trigonometric polynomial on the ``M``-point grid."""
    n = field.n_modes
    if m < 2 * n + 1:
        raise ValueError(f"need at least 2N+1 = {2 * n + 1} points, got {m}")
    c = field.coeffs
    k = field.wavenumbers
    buf = np.zeros(m, dtype=np.complex128)
    buf[k % m] = c * np.where(k % 2 == 0, 1.0, -1.0)
    v = np.fft.ifft(buf) * m
    tol = IMAG_RTOL * (1.0 + np.max(np.abs(c)))
    resid = np.max(np.abs(v.imag))
    if resid > tol:
        raise ValueError(f"imaginary residue {resid:.3e} exceeds {tol:.3e}; field is not real")
    return PhysicalSamples(v.real, field.domain_scale)


def differentiate(field, order=1):
    """Spectral derivative: multiply ``c(k)`` by ``(i k / L)**order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    unit = (1.0, 1j, -1.0, -1j)[order % 4]
    sym = unit * (field.wavenumbers / field.domain_scale) ** order
    return field._like(sym * field.coeffs)


def convolve_truncated(a, b, method="fft"):
    """Coefficients of ``P_N(a b)``: sum of ``a(m) b(n)`` over ``m + n = k``, ``|k| <= N``.

    ``method="direct"`` sums the products explicitly (the reference);
    ``method="fft"`` multiplies on a zero-padded grid of at least 3N+1
    points, which is free of aliasing for a quadratic product.
    """
    _check_compatible(a, b)
    if method == "fft":
        h = kernels.conv_fft(a.half, b.half)
    elif method == "direct":
        h = kernels.conv_direct(a.half, b.half)
    else:
        raise ValueError(f"unknown convolution method {method!r}")
    return SpectralField.from_half(h, a.domain_scale)


def inner_product(a, b):
    """``integral of a*b`` over one period (real by Hermitian symmetry)."""
    _check_compatible(a, b)
    return float(a.period * np.real(np.vdot(b.coeffs, a.coeffs)))


def l2_norm(field):
    return float(np.sqrt(field.period * np.sum(np.abs(field.coeffs) ** 2)))


def sobolev_norm(field, r):
    if r < 0:
        raise ValueError("Sobolev order must be >= 0")
    w = (1.0 + (field.wavenumbers / field.domain_scale) ** 2) ** r
    return float(np.sqrt(np.sum(w * np.abs(field.coeffs) ** 2)))


def sup_norm(field, m=None):
    """Max of |u| sampled on a grid (4(2N+1) points by default)."""
    m = m or 4 * (2 * field.n_modes + 1)
    return float(np.max(np.abs(evaluate(field, m).values)))


def random_field(rng, n_modes, domain_scale=1.0, decay=0.0, scale=1.0):
    """Random Hermitian field; mode ``k`` has std ``scale / (1 + |k|)**decay``."""
    k = np.arange(n_modes + 1)
    amp = scale / (1.0 + k) ** decay
    h = amp * (rng.standard_normal(n_modes + 1) + 1j * rng.standard_normal(n_modes + 1))
    return SpectralField.from_half(h, domain_scale)
