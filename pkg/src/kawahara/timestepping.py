"""Fully discrete time stepping: leap-frog, Crank-Nicolson, and RK4.

Single steps take and return :class:`SpectralField`; the ``*_advance``
functions run many steps inside one compiled kernel and are what the
harness uses.  ``nonlinear=False`` is a test hook that removes the
quadratic term (linear dispersive flow only).
"""
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .dynamics import dispersion, max_frequency
from .spectral import SpectralField

BLOWUP_LIMIT = 1e12

# RK4 is stable on the imaginary axis for |dt * omega| <= 2*sqrt(2).
RK4_IMAG_STABILITY = 2.0 * np.sqrt(2.0)

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100


class NumericalFailure(RuntimeError):
    """Base class for failures of a time integration."""

    step = None
    time = None

    def at_time(self, t):
        self.time = t
        return self


class BlowUpError(NumericalFailure):
    def __init__(self, step, message=None):
        self.step = step
        super().__init__(message or f"blow-up detected at step {step}")


class NonConvergenceError(NumericalFailure):
    def __init__(self, step, residual, iterations):
        self.step = step
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"Crank-Nicolson fixed point did not converge at step {step}: "
            f"residual {residual:.3e} after {iterations} iterations"
        )


class CflWarning(UserWarning):
    pass


@dataclass(frozen=True)
class CnSolverConfig:
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError(f"max_iter must be a positive integer, got {self.max_iter}")


@dataclass(frozen=True)
class LeapfrogState:
    u_prev: SpectralField
    u_curr: SpectralField
    step_index: int
    dt: float

    def __post_init__(self):
        if self.u_prev.n_modes != self.u_curr.n_modes or \
                self.u_prev.domain_scale != self.u_curr.domain_scale:
            raise ValueError("u_prev and u_curr must share N and L")
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")


class CnStepResult(NamedTuple):
    field: SpectralField
    iterations: int
    residual: float


def cfl_max_dt(n_modes, domain_scale=1.0, scheme="leapfrog", c1=1.0):
    """Largest recommended time step.

    leapfrog: ``0.9 / omega_max``; the two-step recursion on
    ``u' = i omega u`` is neutrally stable exactly when ``dt * omega <= 1``.
    cn: ``c1 * L / N``; CN is unconditionally stable for the linear part,
    this bound keeps the fixed-point solve contractive and accurate.
    rk4: ``0.9 * 2 sqrt(2) / omega_max``.
    """
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    wmax = max_frequency(n_modes, domain_scale)
    if scheme == "leapfrog":
        return 0.9 / wmax
    if scheme == "cn":
        return c1 * domain_scale / n_modes
    if scheme == "rk4":
        return 0.9 * RK4_IMAG_STABILITY / wmax
    raise ValueError(f"unknown scheme {scheme!r}")


def _check_cfl(u, dt, scheme):
    bound = cfl_max_dt(u.n_modes, u.domain_scale, scheme)
    if dt > bound:
        warnings.warn(f"dt={dt:.3e} exceeds the {scheme} stability bound {bound:.3e}",
                      CflWarning, stacklevel=3)


def _arrays(u):
    kl, omega = dispersion(u.n_modes, u.domain_scale)
    return kl, omega


def rk4_advance(u, dt, nsteps, nonlinear=True):
    kl, omega = _arrays(u)
    h, failed = kernels.rk4_advance(u.half, float(dt), int(nsteps), kl, omega,
                                    float(nonlinear), BLOWUP_LIMIT)
    if failed >= 0:
        raise BlowUpError(failed)
    return SpectralField.from_half(h, u.domain_scale)


def rk4_step(u, dt, nonlinear=True):
    """One classical four-stage Runge-Kutta step of the Galerkin system."""
    return rk4_advance(u, dt, 1, nonlinear)


def bootstrap_first_step(u0, dt, nonlinear=True):
    """Second starting value for leap-frog; one RK4 step (local error O(dt**5))."""
    return rk4_step(u0, dt, nonlinear)


def leapfrog_start(u0, dt, nonlinear=True):
    return LeapfrogState(u0, bootstrap_first_step(u0, dt, nonlinear), 1, float(dt))


def leapfrog_advance(state, nsteps, nonlinear=True):
    u = state.u_curr
    _check_cfl(u, state.dt, "leapfrog")
    kl, omega = _arrays(u)
    prev, curr, failed = kernels.leapfrog_advance(
        state.u_prev.half, u.half, state.dt, int(nsteps), kl, omega,
        float(nonlinear), BLOWUP_LIMIT)
    if failed >= 0:
        raise BlowUpError(state.step_index + failed)
    return LeapfrogState(SpectralField.from_half(prev, u.domain_scale),
                         SpectralField.from_half(curr, u.domain_scale),
                         state.step_index + int(nsteps), state.dt)


def leapfrog_step(state, nonlinear=True):
    """``U^{m+1} = U^{m-1} + 2 dt F(U^m)``; warns (does not refuse) past the CFL bound."""
    return leapfrog_advance(state, 1, nonlinear)


class CnAdvanceResult(NamedTuple):
    field: SpectralField
    max_iterations: int
    max_residual: float
    last_iterations: int
    last_residual: float


def cn_advance(u, dt, nsteps, cfg=CnSolverConfig(), nonlinear=True, first_step=1):
    kl, omega = _arrays(u)
    h, status, failed, max_it, max_res, last_it, last_res = kernels.cn_advance(
        u.half, float(dt), int(nsteps), kl, omega, float(nonlinear),
        float(cfg.tol), int(cfg.max_iter), u.period, BLOWUP_LIMIT)
    if status == kernels.STATUS_NONCONVERGED:
        raise NonConvergenceError(first_step - 1 + failed, last_res, last_it)
    if status == kernels.STATUS_BLOWUP:
        raise BlowUpError(first_step - 1 + failed)
    return CnAdvanceResult(SpectralField.from_half(h, u.domain_scale),
                           int(max_it), float(max_res), int(last_it), float(last_res))


def cn_solve(um, dt, cfg=CnSolverConfig(), nonlinear=True):
    """One Crank-Nicolson step with its solver statistics."""
    r = cn_advance(um, dt, 1, cfg, nonlinear)
    return CnStepResult(r.field, r.last_iterations, r.last_residual)


def cn_step(um, dt, cfg=CnSolverConfig(), nonlinear=True):
    """Midpoint step ``U^{m+1} - U^m = dt F((U^m + U^{m+1}) / 2)``.

    Solved by fixed-point iteration on the midpoint with the dispersive
    part inverted exactly; stops once the scheme residual (L2) is at most
    ``cfg.tol``.  Negative ``dt`` steps backwards.
    """
    return cn_solve(um, dt, cfg, nonlinear).field
