"""Hot loops behind a backend switch.

``KAWAHARA_NUMBA=0`` (or a missing numba) selects the pure-numpy path;
anything else uses the numba-compiled kernels up to ``NUMBA_MAX_MODES``
modes.  Above that the numba kernels (direct O(N^2) convolution) lose to
the FFT product, so the numpy path is used (see benchmarks/).  Both
backends expose the same functions; callers import from here and never
from a backend directly.
"""
import os

from . import numpy_impl
from .numpy_impl import (FFT_THRESHOLD, STATUS_BLOWUP, STATUS_NONCONVERGED,
                         STATUS_OK, conv_fft, full_from_half, good_fft_size)


def _want_numba():
    flag = os.environ.get("KAWAHARA_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "no", "off")


def load_backend(name):
    """Return the kernel module for ``"numba"`` or ``"numpy"``."""
    if name == "numpy":
        return numpy_impl
    if name == "numba":
        from . import numba_impl
        return numba_impl
    raise ValueError(f"unknown kernel backend {name!r}")


BACKEND = "numpy"
if _want_numba():
    try:
        _impl = load_backend("numba")
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is an optional speedup
        _impl = numpy_impl
else:
    _impl = numpy_impl

NUMBA_MAX_MODES = 128


def _by_size(name):
    fast, slow = getattr(_impl, name), getattr(numpy_impl, name)
    if fast is slow:
        return fast

    def call(u, *args):
        return (fast if u.shape[0] <= NUMBA_MAX_MODES + 1 else slow)(u, *args)
    call.__name__ = name
    call.__doc__ = slow.__doc__
    return call


# conv_direct stays on the selected backend: it is the reference sum, not a speed path
conv_direct = _impl.conv_direct
conv_half = _by_size("conv_half")
nonlinear_half = _by_size("nonlinear_half")
rhs_half = _by_size("rhs_half")
l2_half = _impl.l2_half
rk4_advance = _by_size("rk4_advance")
leapfrog_advance = _by_size("leapfrog_advance")
cn_advance = _by_size("cn_advance")

__all__ = [
    "BACKEND", "FFT_THRESHOLD", "NUMBA_MAX_MODES", "STATUS_OK", "STATUS_BLOWUP", "STATUS_NONCONVERGED",
    "load_backend", "conv_direct", "conv_fft", "conv_half", "nonlinear_half",
    "rhs_half", "l2_half", "rk4_advance", "leapfrog_advance", "cn_advance",
    "full_from_half", "good_fft_size",
]
