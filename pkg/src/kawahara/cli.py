"""Command-line front end.

Exit codes: 0 success, 1 usage/configuration error, 2 numerical failure
(blow-up, solver non-convergence, failed check or soliton gate).
"""
import argparse
import os
import sys

from . import config as cfgmod
from . import harness, io, svgplot
from . import timestepping as ts
from .config import ConfigError

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# flag dest -> flattened config key
FLAG_KEYS = {
    "scheme": "scheme.scheme", "n": "scheme.n_modes", "dt": "scheme.dt",
    "t_final": "scheme.t_final", "domain_scale": "scheme.domain_scale",
    "record_every": "scheme.record_every", "nonlinearity": "scheme.nonlinearity",
    "initial": "initial.profile", "amplitude": "initial.amplitude", "width": "initial.width",
    "center": "initial.center", "coeffs_file": "initial.path",
    "cn_tol": "cn.tol", "cn_max_iter": "cn.max_iter",
    "axis": "converge.axis", "dts": "converge.dts", "ns": "converge.ns",
    "n_ref": "converge.n_ref", "reference": "converge.reference",
    "output_dir": "output.dir", "formats": "output.formats",
}


def _scheme_flags(p):
    g = p.add_argument_group("scheme")
    g.add_argument("--config", help="INI file; flags override its values")
    g.add_argument("--scheme", help="leapfrog | cn | rk4")
    g.add_argument("--n", help="number of Fourier modes N")
    g.add_argument("--dt", help="time step or 'auto'")
    g.add_argument("--t-final", dest="t_final", help="final time T")
    g.add_argument("--domain-scale", dest="domain_scale", help="period is 2*pi*L")
    g.add_argument("--record-every", dest="record_every", help="record invariants every k steps")
    g.add_argument("--nonlinearity", help="on | off")
    g.add_argument("--initial", help=", ".join(harness.PROFILES))
    g.add_argument("--amplitude")
    g.add_argument("--width", help="gaussian-bump standard deviation")
    g.add_argument("--center")
    g.add_argument("--coeffs-file", dest="coeffs_file", help="CSV k,real,imag")
    g.add_argument("--cn-tol", dest="cn_tol")
    g.add_argument("--cn-max-iter", dest="cn_max_iter")
    g.add_argument("--output-dir", dest="output_dir")
    g.add_argument("--formats", help="comma list of csv, svg")


def build_parser():
    p = _Parser(prog="kawahara", description="Fourier-Galerkin solver for the periodic Kawahara equation")
    sub = p.add_subparsers(dest="command")
    run = sub.add_parser("run", help="integrate one configuration, write run.csv")
    _scheme_flags(run)
    conv = sub.add_parser("converge", help="temporal or spatial refinement study, write converge.csv")
    _scheme_flags(conv)
    conv.add_argument("--axis", help="temporal | spatial")
    conv.add_argument("--dts", help="comma list of time steps (temporal)")
    conv.add_argument("--ns", help="comma list of mode counts (spatial)")
    conv.add_argument("--n-ref", dest="n_ref", help="reference mode count (spatial)")
    conv.add_argument("--reference", help="rk4 | exact (temporal)")
    sol = sub.add_parser("soliton-test", help="residual gate then CN transport of the solitary wave")
    sol.add_argument("--n", default="512")
    sol.add_argument("--domain-scale", dest="domain_scale", default="20")
    sol.add_argument("--dt", default="1e-3")
    sol.add_argument("--t-final", dest="t_final", default="1")
    sol.add_argument("--record-every", dest="record_every", default="100")
    sol.add_argument("--output-dir", dest="output_dir")
    sol.add_argument("--formats")
    chk = sub.add_parser("check", help="fast invariant and oracle checks")
    chk.add_argument("--seed", default="0")
    return p


def gather(args):
    values = cfgmod.load(args.config) if getattr(args, "config", None) else {}
    for dest, key in FLAG_KEYS.items():
        v = getattr(args, dest, None)
        if v is not None:
            values[key] = v
    return values


def scheme_config(values):
    get = values.get
    dt = get("scheme.dt", "auto")
    ic_kwargs = {}
    if "initial.amplitude" in values:
        ic_kwargs["amplitude"] = cfgmod.as_float("initial.amplitude", values["initial.amplitude"])
    if "initial.width" in values:
        ic_kwargs["width"] = cfgmod.as_float("initial.width", values["initial.width"])
    if "initial.center" in values:
        ic_kwargs["center"] = cfgmod.as_float("initial.center", values["initial.center"])
    profile = get("initial.profile", "sin")
    if profile not in harness.PROFILES:
        raise ConfigError("initial.profile", f"unknown profile {profile!r} (expected {', '.join(harness.PROFILES)})")
    if profile == "coefficients-from-file" and not get("initial.path"):
        raise ConfigError("initial.path", "coefficients-from-file needs --coeffs-file / initial.path")
    scheme = get("scheme.scheme", "cn")
    if scheme not in harness.SCHEMES:
        raise ConfigError("scheme.scheme", f"unknown scheme {scheme!r} (expected {', '.join(harness.SCHEMES)})")
    try:
        ic = harness.InitialCondition(profile, path=get("initial.path"), **ic_kwargs)
        cn = ts.CnSolverConfig(
            tol=cfgmod.as_float("cn.tol", get("cn.tol", ts.DEFAULT_TOL)),
            max_iter=cfgmod.as_int("cn.max_iter", get("cn.max_iter", ts.DEFAULT_MAX_ITER)))
        return harness.SchemeConfig(
            scheme=scheme,
            n_modes=cfgmod.as_int("scheme.n_modes", get("scheme.n_modes", 8)),
            dt="auto" if str(dt).strip().lower() == "auto" else cfgmod.as_float("scheme.dt", dt),
            t_final=cfgmod.as_float("scheme.t_final", get("scheme.t_final", 1.0)),
            domain_scale=cfgmod.as_float("scheme.domain_scale", get("scheme.domain_scale", 1.0)),
            initial=ic, cn=cn,
            record_every=cfgmod.as_int("scheme.record_every", get("scheme.record_every", 1)),
            nonlinearity=cfgmod.as_switch("scheme.nonlinearity", get("scheme.nonlinearity", "on")))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("scheme", str(exc)) from None


def output_dir(values):
    path = values.get("output.dir", ".")
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as exc:
        raise ConfigError("output.dir", f"cannot create {path}: {exc.strerror}") from None
    if not os.access(path, os.W_OK):
        raise ConfigError("output.dir", f"{path} is not writable")
    return path


def formats(values):
    fm = [f.strip().lower() for f in str(values.get("output.formats", "csv,svg")).split(",") if f.strip()]
    bad = [f for f in fm if f not in ("csv", "svg")]
    if bad:
        raise ConfigError("output.formats", f"unknown format {bad[0]!r} (expected csv, svg)")
    return fm


def cmd_run(values, out):
    config = scheme_config(values)
    out_dir, fm = output_dir(values), formats(values)
    rec = harness.run(config)
    if "csv" in fm:
        io.write_run_csv(rec, os.path.join(out_dir, "run.csv"))
    if "svg" in fm:
        svgplot.invariant_drift_plot(os.path.join(out_dir, "run.svg"), rec)
    print(f"{config.scheme}: N={config.n_modes} dt={rec.dt:.6g} steps={rec.n_steps} "
          f"i2 drift={abs(rec.i2[-1] - rec.i2[0]):.3e} i3 drift={abs(rec.i3[-1] - rec.i3[0]):.3e}", file=out)


def cmd_converge(values, out):
    config = scheme_config(values)
    out_dir, fm = output_dir(values), formats(values)
    axis = values.get("converge.axis", "temporal")
    if axis == "temporal":
        if "converge.dts" not in values:
            raise ConfigError("converge.dts", "temporal study needs --dts")
        dts = cfgmod.as_list("converge.dts", values["converge.dts"], cfgmod.as_float)
        reference = values.get("converge.reference", "rk4")
        if reference not in ("rk4", "exact"):
            raise ConfigError("converge.reference", f"unknown reference {reference!r} (expected rk4, exact)")
        try:
            report = harness.temporal_convergence(config, dts, reference=reference)
        except ValueError as exc:
            raise ConfigError("converge.reference", str(exc)) from None
    elif axis == "spatial":
        if "converge.ns" not in values:
            raise ConfigError("converge.ns", "spatial study needs --ns")
        ns = cfgmod.as_list("converge.ns", values["converge.ns"], cfgmod.as_int)
        n_ref = cfgmod.as_int("converge.n_ref", values.get("converge.n_ref", 2 * max(ns)))
        if n_ref < 2 * max(ns):
            raise ConfigError("converge.n_ref", f"must be at least 2*max(ns) = {2 * max(ns)}")
        report = harness.spatial_convergence(config, ns, n_ref)
    else:
        raise ConfigError("converge.axis", f"unknown axis {axis!r} (expected temporal, spatial)")
    if "csv" in fm:
        io.write_converge_csv(report, os.path.join(out_dir, "converge.csv"))
    if "svg" in fm:
        svgplot.convergence_plot(os.path.join(out_dir, "converge.svg"), report)
    for p, e, o in zip(report.params, report.errors, report.observed_orders):
        print(f"{p:<12.6g} error={e:.6e} {'order' if axis == 'temporal' else 'ratio'}={o:.4g}", file=out)


def cmd_soliton(values, args, out):
    from .soliton import SolitonGateError, soliton_transport
    out_dir, fm = output_dir(values), formats(values)
    try:
        report = soliton_transport(
            n_modes=cfgmod.as_int("n", args.n),
            domain_scale=cfgmod.as_float("domain_scale", args.domain_scale),
            dt=cfgmod.as_float("dt", args.dt),
            t_final=cfgmod.as_float("t_final", args.t_final),
            record_every=cfgmod.as_int("record_every", args.record_every))
    except SolitonGateError as exc:
        print(f"soliton test disabled: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        raise ConfigError("domain_scale", str(exc)) from None
    if "csv" in fm:
        io.write_soliton_csv(report, os.path.join(out_dir, "soliton.csv"))
    if "svg" in fm:
        svgplot.soliton_plot(os.path.join(out_dir, "soliton.svg"), report)
    print(f"residual={report.residual:.3e} max L2 error={report.max_l2_error:.3e} "
          f"speed={report.speed:.6f} (exact {36 / 169:.6f}, rel err {report.speed_error:.2e})", file=out)
    return EXIT_OK


def cmd_check(args, out):
    from .checks import run_checks
    results = run_checks(cfgmod.as_int("seed", args.seed))
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}", file=out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERICAL


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required: run, converge, soliton-test, check")
        if args.command == "check":
            return cmd_check(args, out)
        values = gather(args) if args.command != "soliton-test" else {
            k: v for k, v in (("output.dir", args.output_dir), ("output.formats", args.formats)) if v is not None}
        if args.command == "run":
            cmd_run(values, out)
        elif args.command == "converge":
            cmd_converge(values, out)
        else:
            return cmd_soliton(values, args, out)
        return EXIT_OK
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ts.NumericalFailure as exc:
        where = f" at step {exc.step}" if exc.step is not None else ""
        when = f", t={exc.time:.6g}" if exc.time is not None else ""
        print(f"numerical failure{where}{when}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
