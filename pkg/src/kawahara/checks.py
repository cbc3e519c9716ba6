"""Fast self-checks run by ``kawahara check``."""
from typing import NamedTuple

import numpy as np

from . import timestepping as ts
from .dynamics import galerkin_rhs
from .spectral import convolve_truncated, inner_product, l2_norm, random_field
from .soliton import RESIDUAL_GATE, soliton_residual_check


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


def check_convolution(rng):
    worst = 0.0
    for n in (8, 32, 128):
        for _ in range(10):
            a, b = random_field(rng, n), random_field(rng, n)
            d = convolve_truncated(a, b, "direct")
            worst = max(worst, l2_norm(convolve_truncated(a, b, "fft") - d) / l2_norm(d))
    return CheckResult("convolution fft == direct", worst <= 1e-12, f"max rel L2 {worst:.2e}")


def check_hermitian(rng):
    # every stepper output passes the SpectralField symmetry check on construction
    u = random_field(rng, 16, decay=3.0, scale=0.3)
    worst = 0.0
    for out in (galerkin_rhs(u), ts.rk4_step(u, 1e-7), ts.cn_step(u, 1e-4),
                ts.leapfrog_step(ts.leapfrog_start(u, 1e-7)).u_curr):
        c = out.coeffs
        worst = max(worst, float(np.max(np.abs(c - np.conj(c[::-1])))))
    return CheckResult("Hermitian symmetry", worst == 0.0, f"max defect {worst:.1e}")


def check_orthogonality(rng):
    worst = 0.0
    # smooth fields: a flat spectrum at N=16 has a rounding floor near eps*omega_max
    for _ in range(20):
        u = random_field(rng, 16, decay=3.0)
        worst = max(worst, abs(inner_product(galerkin_rhs(u), u)) / l2_norm(u) ** 2)
    return CheckResult("<F(U), U> = 0", worst <= 1e-12, f"max |<F,U>|/|U|^2 {worst:.2e}")


def check_cn_norm(rng):
    u = random_field(rng, 8, decay=2.0, scale=0.3)
    n0 = l2_norm(u)
    r = ts.cn_advance(u, 1e-3, 100)
    drift = abs(l2_norm(r.field) - n0)
    return CheckResult("CN L2 conservation", drift <= 1e-9, f"|dL2| after 100 steps {drift:.2e}")


def check_soliton():
    r = soliton_residual_check()
    return CheckResult("soliton residual", r <= RESIDUAL_GATE, f"residual {r:.2e} (gate {RESIDUAL_GATE:.0e})")


def run_checks(seed=0):
    rng = np.random.default_rng(seed)
    return [check_convolution(rng), check_hermitian(rng), check_orthogonality(rng),
            check_cn_norm(rng), check_soliton()]
