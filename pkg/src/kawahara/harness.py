"""Simulation driver and refinement studies.

Reference solutions are numerical: RK4 with a tiny step for temporal
studies and a high-N run for spatial ones.  Across different N, errors are
taken on the common modes, i.e. the finer solution is projected with P_N.
"""
import csv
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Union

import numpy as np

from . import timestepping as ts
from .dynamics import dispersion, invariants, max_frequency
from .spectral import PhysicalSamples, SpectralField, l2_norm, project, sup_norm

SCHEMES = ("leapfrog", "cn", "rk4")
PROFILES = ("sin", "gaussian-bump", "soliton", "coefficients-from-file")


@dataclass(frozen=True)
class InitialCondition:
    """Named initial profile.

    ``sin``: ``amplitude * sin(x / L)``.  ``gaussian-bump``: periodized
    ``amplitude * exp(-(x - center)**2 / (2 width**2))``.  ``soliton``: the
    sech**4 solitary wave scaled by ``amplitude`` and centred at ``center``
    (an exact solution only for amplitude 1).  ``coefficients-from-file``:
    CSV rows ``k,real,imag`` read from ``path``.
    """

    profile: str = "sin"
    amplitude: float = 1.0
    width: float = 0.5
    center: float = 0.0
    path: Optional[str] = None

    def __post_init__(self):
        if self.profile not in PROFILES:
            raise ValueError(f"unknown profile {self.profile!r}; expected one of {', '.join(PROFILES)}")
        if self.profile == "gaussian-bump" and not self.width > 0:
            raise ValueError("gaussian-bump width must be positive")
        if self.profile == "coefficients-from-file" and not self.path:
            raise ValueError("coefficients-from-file needs a path")


@dataclass(frozen=True)
class SchemeConfig:
    scheme: str = "cn"
    n_modes: int = 8
    dt: Union[float, str] = "auto"
    t_final: float = 1.0
    domain_scale: float = 1.0
    initial: InitialCondition = field(default_factory=InitialCondition)
    cn: ts.CnSolverConfig = field(default_factory=ts.CnSolverConfig)
    record_every: int = 1
    nonlinearity: bool = True
    snapshot_every: int = 0

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; expected one of {', '.join(SCHEMES)}")
        if int(self.n_modes) != self.n_modes or self.n_modes < 1:
            raise ValueError(f"n_modes must be a positive integer, got {self.n_modes}")
        if not self.t_final > 0:
            raise ValueError(f"t_final must be positive, got {self.t_final}")
        if not self.domain_scale > 0:
            raise ValueError(f"domain_scale must be positive, got {self.domain_scale}")
        if self.dt != "auto" and not (isinstance(self.dt, (int, float)) and self.dt > 0):
            raise ValueError(f"dt must be positive or 'auto', got {self.dt!r}")
        if self.record_every < 1:
            raise ValueError("record_every must be >= 1")

    def time_grid(self):
        """``(dt, M)`` with ``M dt == t_final``: dt is moved to the nearest divisor of T."""
        dt = ts.cfl_max_dt(self.n_modes, self.domain_scale, self.scheme) if self.dt == "auto" else float(self.dt)
        nsteps = max(1, int(round(self.t_final / dt)))
        if self.dt == "auto" and self.t_final / nsteps > dt:
            nsteps += 1
        return self.t_final / nsteps, nsteps


@dataclass
class RunRecord:
    times: np.ndarray
    i1: np.ndarray
    i2: np.ndarray
    i3: np.ndarray
    l2: np.ndarray
    sup: np.ndarray
    cn_iters: np.ndarray
    cn_residual: np.ndarray
    final: SpectralField
    dt: float
    n_steps: int
    snapshots: list = field(default_factory=list)


@dataclass
class ConvergenceReport:
    """``observed_orders[i]`` compares entry ``i`` with ``i - 1`` (NaN for the first).

    temporal: ``log(e[i-1] / e[i]) / log(dt[i-1] / dt[i])`` (log2 for halving).
    spatial: the decay ratio ``e[i-1] / e[i]``.
    """

    axis: str
    params: list
    errors: np.ndarray
    observed_orders: np.ndarray
    reference: str = ""


def read_coefficients(path, n_modes):
    """Coefficients from CSV rows ``k,real,imag``; missing modes are 0, |k| > N dropped."""
    c = np.zeros(2 * n_modes + 1, dtype=np.complex128)
    seen = {}
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    if rows and rows[0][0].strip().lower() == "k":
        rows = rows[1:]
    for lineno, row in enumerate(rows, 1):
        try:
            k, re_, im_ = int(row[0]), float(row[1]), float(row[2])
        except (ValueError, IndexError):
            raise ValueError(f"{path}: malformed coefficient row {lineno}: {row!r}") from None
        seen[k] = complex(re_, im_)
    for k, v in seen.items():
        if -k in seen and abs(seen[-k] - np.conj(v)) > 1e-12 * (1 + abs(v)):
            raise ValueError(f"{path}: modes {k} and {-k} are not complex conjugates")
        if abs(k) <= n_modes:
            c[k + n_modes] = v
            if -k not in seen:
                c[-k + n_modes] = np.conj(v)
    if abs(c[n_modes].imag) > 1e-12 * (1 + abs(c[n_modes])):
        raise ValueError(f"{path}: mode 0 must be real")
    return SpectralField.from_coeffs(c, symmetrize=True)


def initial_field(config):
    ic = config.initial
    n, scale = config.n_modes, config.domain_scale
    if ic.profile == "coefficients-from-file":
        return SpectralField(read_coefficients(ic.path, n).coeffs, scale)
    m = max(256, 4 * (2 * n + 1))
    if ic.profile == "sin":
        samples = PhysicalSamples.from_function(lambda x: ic.amplitude * np.sin(x / scale), m, scale)
    elif ic.profile == "gaussian-bump":
        period = 2 * np.pi * scale

        def bump(x):
            out = np.zeros_like(x)
            for img in range(-3, 4):
                out += np.exp(-((x - ic.center - img * period) ** 2) / (2 * ic.width ** 2))
            return ic.amplitude * out
        samples = PhysicalSamples.from_function(bump, m, scale)
    else:
        from .soliton import soliton_profile
        samples = soliton_profile(ic.amplitude, ic.center, 0.0, n_points=m, domain_scale=scale)
    return project(samples, n)


def threads():
    """Harness parallelism cap from ``KAWAHARA_THREADS`` (default: CPU count)."""
    raw = os.environ.get("KAWAHARA_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = os.cpu_count() or 1
    return max(1, n)


def _map_cells(func, items):
    items = list(items)
    workers = min(threads(), len(items))
    if workers <= 1:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


class _Recorder:
    def __init__(self):
        self.rows = []
        self.snapshots = []

    def add(self, t, u, iters=0, residual=0.0):
        inv = invariants(u)
        self.rows.append((t, inv.i1, inv.i2, inv.i3, l2_norm(u), sup_norm(u), iters, residual))

    def build(self, final, dt, nsteps):
        cols = list(zip(*self.rows))
        arr = [np.array(c, dtype=float) for c in cols]
        return RunRecord(*arr[:6], np.array(cols[6], dtype=int), arr[7], final, dt, nsteps, self.snapshots)


def run(config, u0=None):
    """Integrate ``config`` to ``t_final``; invariants every ``record_every`` steps and at the end."""
    if u0 is None:
        u0 = initial_field(config)
    dt, nsteps = config.time_grid()
    nl = config.nonlinearity
    rec = _Recorder()
    rec.add(0.0, u0)
    if config.snapshot_every:
        rec.snapshots.append((0.0, u0))

    marks = sorted(set(range(config.record_every, nsteps, config.record_every)) | {nsteps})
    if config.snapshot_every:
        snaps = set(range(config.snapshot_every, nsteps + 1, config.snapshot_every)) | {nsteps}
        marks = sorted(set(marks) | snaps)
    else:
        snaps = set()
    records = set(range(config.record_every, nsteps, config.record_every)) | {nsteps}

    step = 0
    u = u0
    state = None
    try:
        for mark in marks:
            todo = mark - step
            iters, res = 0, 0.0
            if config.scheme == "rk4":
                u = ts.rk4_advance(u, dt, todo, nl)
            elif config.scheme == "cn":
                r = ts.cn_advance(u, dt, todo, config.cn, nl, first_step=step + 1)
                u, iters, res = r.field, r.max_iterations, r.max_residual
            else:
                if state is None:
                    state = ts.leapfrog_start(u, dt, nl)
                    todo -= 1
                state = ts.leapfrog_advance(state, todo, nl)
                u = state.u_curr
            step = mark
            t = step * dt
            if mark in records:
                rec.add(t, u, iters, res)
            if mark in snaps:
                rec.snapshots.append((t, u))
    except ts.NumericalFailure as exc:
        if exc.step is None:
            exc.step = step
        raise exc.at_time(exc.step * dt)
    return rec.build(u, dt, nsteps)


def _orders(params, errors, axis):
    errors = np.asarray(errors, dtype=float)
    out = np.full(errors.shape, np.nan)
    for i in range(1, len(errors)):
        if axis == "temporal":
            out[i] = np.log(errors[i - 1] / errors[i]) / np.log(params[i - 1] / params[i])
        else:
            out[i] = errors[i - 1] / errors[i]
    return out


def reference_dt(base, dts):
    """RK4 reference step: ``min(dts) / 50``, shrunk further to stay RK4-stable."""
    stable = 2.0 / max_frequency(base.n_modes, base.domain_scale)
    return min(min(dts) / 50.0, stable)


def exact_linear(u0, t):
    """Exact propagator of the linear dispersive flow: ``c(k) exp(i omega_k t)``."""
    _, omega = dispersion(u0.n_modes, u0.domain_scale)
    return SpectralField.from_half(u0.half * np.exp(1j * omega * t), u0.domain_scale)


def temporal_convergence(base, dts, reference="rk4"):
    """Errors at ``t_final`` against a fine reference for each step size in ``dts``.

    ``reference="rk4"`` uses RK4 at ``reference_dt``; ``reference="exact"``
    uses the exact linear propagator and requires ``nonlinearity=False``.
    """
    dts = [float(d) for d in dts]
    u0 = initial_field(base)
    if reference == "exact":
        if base.nonlinearity:
            raise ValueError("exact reference needs nonlinearity off")
        ref = exact_linear(u0, base.t_final)
        label = "exact linear propagator"
    elif reference == "rk4":
        rdt = reference_dt(base, dts)
        try:
            ref = run(replace(base, scheme="rk4", dt=rdt, record_every=10 ** 9, snapshot_every=0), u0).final
        except ts.NumericalFailure as exc:
            raise ts.NumericalFailure(f"reference RK4 run failed: {exc}") from exc
        label = f"rk4 dt={base.t_final / max(1, round(base.t_final / rdt)):.6g}"
    else:
        raise ValueError(f"unknown reference {reference!r}")

    def cell(dt):
        out = run(replace(base, dt=dt, record_every=10 ** 9, snapshot_every=0), u0)
        return l2_norm(out.final - ref), out.dt

    results = _map_cells(cell, dts)
    errors = np.array([e for e, _ in results])
    params = [d for _, d in results]
    return ConvergenceReport("temporal", params, errors, _orders(params, errors, "temporal"), label)


def spatial_convergence(base, ns, n_ref):
    """Errors ``||U_N(T) - P_N U_ref(T)||`` for each N, same scheme and dt throughout."""
    ns = [int(n) for n in ns]
    if n_ref < 2 * max(ns):
        raise ValueError(f"n_ref={n_ref} must be at least 2*max(ns)={2 * max(ns)}")
    light = replace(base, record_every=10 ** 9, snapshot_every=0)

    def cell(n):
        return run(replace(light, n_modes=n)).final

    finals = _map_cells(cell, [n_ref] + ns)
    ref = finals[0]
    errors = np.array([l2_norm(u - ref.resized(u.n_modes)) for u in finals[1:]])
    return ConvergenceReport("spatial", ns, errors, _orders(ns, errors, "spatial"), f"N_ref={n_ref}")
