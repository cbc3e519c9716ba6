"""Acceptance criteria, each at its stated tolerance and runtime budget.

Every test records one PASS/FAIL line; the lines are repeated in the
pytest terminal summary under "acceptance criteria".
"""
import subprocess
import sys
import time
import warnings

import numpy as np
import pytest

from helpers import verdict
from kawahara.dynamics import galerkin_rhs, max_frequency
from kawahara.harness import InitialCondition, SchemeConfig, run, spatial_convergence, temporal_convergence
from kawahara.soliton import SPEED, SolitonGateError, require_gate, soliton_transport
from kawahara.spectral import convolve_truncated, inner_product, l2_norm, random_field
from kawahara.timestepping import BlowUpError, CflWarning, CnSolverConfig, cn_step, leapfrog_start, rk4_step

SIN = InitialCondition("sin")
ROUNDOFF_FLOOR = 1e-12


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    """Compile the numba kernels once so runtimes measure the computation."""
    u = random_field(np.random.default_rng(0), 4, decay=2.0, scale=0.1)
    galerkin_rhs(u, method="kernel")
    rk4_step(u, 1e-6)
    cn_step(u, 1e-6)
    leapfrog_start(u, 1e-6)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def test_01_convolution_oracle():
    rng = np.random.default_rng(1)
    worst = {}
    with Timer() as tm:
        for n in (8, 32, 128):
            w = 0.0
            for _ in range(100):
                a, b = random_field(rng, n), random_field(rng, n)
                d = convolve_truncated(a, b, "direct")
                w = max(w, l2_norm(convolve_truncated(a, b, "fft") - d) / l2_norm(d))
            worst[n] = w
    ok = max(worst.values()) <= 1e-12 and tm.seconds < 5
    detail = ", ".join(f"N={n} {w:.1e}" for n, w in worst.items())
    assert verdict("1 convolution fft vs direct", ok, f"max rel L2 {detail}; {tm.seconds:.2f}s")


def test_02_semidiscrete_conservation():
    # smooth random fields, std (1 + |k|)^-3, N cycling over 4..32
    rng = np.random.default_rng(2)
    worst, mass = 0.0, 0.0
    with Timer() as tm:
        for i in range(100):
            u = random_field(rng, (4, 8, 16, 32)[i % 4], decay=3.0)
            f = galerkin_rhs(u)
            worst = max(worst, abs(inner_product(f, u)) / l2_norm(u) ** 2)
            mass = max(mass, abs(f[0]))
    ok = worst <= 1e-12 and mass == 0.0 and tm.seconds < 1
    assert verdict("2 <F(U),U> = 0 and F(U)(0) = 0", ok,
                   f"max |<F,U>|/|U|^2 {worst:.1e}, max |F(0)| {mass:.0e}; {tm.seconds:.2f}s")


def test_03_cn_l2_conservation():
    cfg = SchemeConfig(scheme="cn", n_modes=8, dt=1e-3, t_final=1.0, initial=SIN, cn=CnSolverConfig(tol=1e-12))
    with Timer() as tm:
        rec = run(cfg)
    drift = float(np.max(np.abs(rec.l2 - rec.l2[0])))
    ok = rec.n_steps == 1000 and len(rec.l2) == 1001 and drift <= 1e-9 and tm.seconds < 5
    assert verdict("3 CN L2 conservation", ok, f"max |‖U^m‖-‖U^0‖| {drift:.2e} over {rec.n_steps} steps; {tm.seconds:.2f}s")


def test_04_temporal_second_order():
    with Timer() as tm:
        cn = temporal_convergence(SchemeConfig(scheme="cn", n_modes=16, t_final=0.1, initial=SIN),
                                  [4e-3, 2e-3, 1e-3, 5e-4])
        lf = temporal_convergence(SchemeConfig(scheme="leapfrog", n_modes=8, t_final=0.01, initial=SIN),
                                  [2e-5, 1e-5, 5e-6])
    orders = np.concatenate([cn.observed_orders[1:], lf.observed_orders[1:]])
    ok = bool(np.all((orders >= 1.8) & (orders <= 2.2))) and tm.seconds < 60
    assert verdict("4 temporal order", ok,
                   f"cn {np.round(cn.observed_orders[1:], 3).tolist()}, leapfrog "
                   f"{np.round(lf.observed_orders[1:], 3).tolist()}; {tm.seconds:.2f}s")


def test_05_leapfrog_stability_boundary():
    n = 8
    bound = 0.9 / max_frequency(n)
    with Timer() as tm:
        stable = run(SchemeConfig(scheme="leapfrog", n_modes=n, dt=bound, t_final=1e4 * bound, initial=SIN))
        ratio = float(np.max(stable.sup) / stable.sup[0])
        blown = None
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", CflWarning)
            try:
                run(SchemeConfig(scheme="leapfrog", n_modes=n, dt=1.2 * bound, t_final=1e4 * 1.2 * bound,
                                 initial=SIN, record_every=10 ** 4))
            except BlowUpError as exc:
                blown = exc.step
    ok = stable.n_steps == 10 ** 4 and ratio <= 10 and blown is not None and blown <= 10 ** 4 and tm.seconds < 30
    assert verdict("5 leap-frog stability boundary", ok,
                   f"0.9x: max sup ratio {ratio:.3f} over {stable.n_steps} steps; 1.2x: blow-up at step {blown}; "
                   f"{tm.seconds:.2f}s")


def test_06_spatial_spectral_decay():
    base = SchemeConfig(scheme="cn", dt=2.5e-6, t_final=0.05, initial=InitialCondition("gaussian-bump"))
    with Timer() as tm:
        rep = spatial_convergence(base, [4, 8, 12, 16], 48)
    e = rep.errors
    # a pair is pre-roundoff when a decay of 16 would still land above the floor
    pairs = [(rep.params[i - 1], rep.observed_orders[i]) for i in range(1, len(e)) if e[i - 1] >= 16 * ROUNDOFF_FLOOR]
    ok = len(pairs) >= 1 and all(r >= 16 for _, r in pairs) and e[-1] <= 1e-6 and tm.seconds < 60
    assert verdict("6 spatial spectral decay", ok,
                   f"e(N) {[f'{x:.2e}' for x in e]}, pre-roundoff ratios "
                   f"{[f'{n}:{r:.0f}' for n, r in pairs]}; {tm.seconds:.2f}s")


def test_07_rk4_i3_drift():
    base = SchemeConfig(scheme="rk4", n_modes=16, t_final=0.5, initial=SIN, record_every=10 ** 4)
    with Timer() as tm:
        coarse = run(base)
        fine = run(SchemeConfig(scheme="rk4", n_modes=16, dt=coarse.dt / 2, t_final=0.5, initial=SIN,
                                record_every=10 ** 4))
    drifts = [float(np.max(np.abs(r.i3 - r.i3[0])) / abs(r.i3[0])) for r in (coarse, fine)]
    exponent = float(np.log2(drifts[0] / drifts[1])) if drifts[1] > 0 else float("inf")
    ok_drift = max(drifts) <= 1e-10
    ok_scaling = 3.5 <= exponent <= 4.5
    ok = ok_drift and ok_scaling and tm.seconds < 60
    verdict("7 RK4 I3 drift", ok,
            f"dt {coarse.dt:.3e}/{fine.dt:.3e}: rel drift {drifts[0]:.2e}/{drifts[1]:.2e} "
            f"(<=1e-10 {'met' if ok_drift else 'missed'}), halving exponent {exponent:.2f} "
            f"(needs [3.5, 4.5]); {tm.seconds:.2f}s")
    assert ok_drift
    assert ok_scaling, f"I3 drift exponent {exponent:.2f} outside [3.5, 4.5]"
    assert tm.seconds < 60


def test_08_soliton_gate_and_transport():
    with Timer() as tm:
        try:
            residual = require_gate(512, 20.0)
        except SolitonGateError as exc:
            verdict("8 soliton", False, f"gate failed, soliton checks disabled: {exc}")
            pytest.skip(str(exc))
        rep = soliton_transport(n_modes=512, domain_scale=20.0, dt=1e-3, t_final=1.0, record_every=100)
    ok = rep.max_l2_error <= 1e-3 and rep.speed_error <= 0.02 and tm.seconds < 120
    assert verdict("8 soliton gate + transport", ok,
                   f"residual {residual:.2e}, max L2 error {rep.max_l2_error:.2e}, speed {rep.speed:.8f} vs "
                   f"{SPEED:.8f} (rel {rep.speed_error:.1e}); {tm.seconds:.2f}s")


def test_09_determinism(tmp_path):
    outputs = []
    for name in ("first", "second"):
        d = tmp_path / name
        subprocess.run([sys.executable, "-m", "kawahara", "run", "--scheme", "cn", "--n", "12", "--dt", "1e-3",
                        "--t-final", "0.2", "--initial", "gaussian-bump", "--output-dir", str(d),
                        "--formats", "csv"], check=True, capture_output=True)
        outputs.append((d / "run.csv").read_bytes())
    ok = outputs[0] == outputs[1] and len(outputs[0]) > 0
    assert verdict("9 determinism", ok, f"two runs, {len(outputs[0])} bytes each, identical={outputs[0] == outputs[1]}")
