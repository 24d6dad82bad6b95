"""Command line front end: ``waterhammer {run,converge,weak,sweep,moc}``.

Exit codes: 0 success, 1 failed self-check or I/O error, 2 invalid input,
3 numerical abort.
"""

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .config import load_scenario
from .driver import SCHEMES, Recording, oscillation_period_estimate, run
from .errors import InsufficientDataError, NumericalAbort, OutputError, ValidationError
from .output import OutputDir, emit_outputs, fmt
from .verify.metrics import pressure_rise, surge_metrics
from .verify.moc import self_checks
from .verify.order import observed_order
from .verify.weak import weak_residual


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}") from None


def build_parser():
    parser = argparse.ArgumentParser(prog="waterhammer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out=True):
        p.add_argument("--scenario", default="waterhammer_s8",
                       help="scenario TOML file or bundled name (default: %(default)s)")
        p.add_argument("--scheme", choices=SCHEMES, default="lax-wendroff")
        if out:
            p.add_argument("--out", type=Path, required=True, help="output directory")
            p.add_argument("--force", action="store_true", help="overwrite existing files")

    p = sub.add_parser("run", help="march one scenario and write probes and heatmaps")
    common(p)
    p.add_argument("--probes", type=_floats, default=[], help="x1,x2,... probe positions")
    p.add_argument("--stride", type=int, default=10, help="heatmap snapshot stride in steps")
    p.add_argument("--courant", type=_floats, help="Courant number override")
    p.add_argument("--dx", type=_floats, help="mesh width override")

    p = sub.add_parser("converge", help="observed order on nested meshes (Richardson)")
    common(p)
    p.add_argument("--dx", type=_floats, help="mesh widths, each half the previous")
    p.add_argument("--courant", type=_floats)

    p = sub.add_parser("weak", help="weak-form residual on nested meshes")
    common(p)
    p.add_argument("--dx", type=_floats, help="mesh widths, each half the previous")
    p.add_argument("--courant", type=_floats)
    p.add_argument("--t1-coefficient", type=float, default=2.0,
                   help="weight of the closure-time line term (default: %(default)s)")

    p = sub.add_parser("sweep", help="Courant / mesh sweeps with probe metrics")
    common(p)
    p.add_argument("--courant", type=_floats, help="Courant numbers")
    p.add_argument("--dx", type=_floats, help="mesh widths")
    p.add_argument("--probes", type=_floats, help="probe positions (default: L/2)")
    p.add_argument("--stride", type=int, default=0)

    p = sub.add_parser("moc", help="method-of-characteristics oracle self-checks")
    p.add_argument("--out", type=Path)
    p.add_argument("--force", action="store_true")
    return parser


def _single(values, name):
    if values is None:
        return None
    if len(values) != 1:
        raise ValidationError(f"--{name} takes one value for this command")
    return values[0]


def _levels(scenario, dx_list, courant):
    if courant is not None:
        scenario = scenario.replace(courant=courant)
    dx_list = dx_list or [4 * scenario.dx, 2 * scenario.dx, scenario.dx]
    return [scenario.replace(dx=dx) for dx in dx_list]


def cmd_run(args):
    scenario = load_scenario(args.scenario)
    courant, dx = _single(args.courant, "courant"), _single(args.dx, "dx")
    if courant is not None:
        scenario = scenario.replace(courant=courant)
    if dx is not None:
        scenario = scenario.replace(dx=dx)
    traj = run(scenario, Recording(probes=tuple(args.probes), stride=args.stride), scheme=args.scheme)
    events = [(e.t, e.kind, e.detail.replace(",", ";")) for e in traj.events]
    bounds = [(k, v) for k, v in traj.bounds.items()]
    paths = emit_outputs(traj, args.out, [("events", ("t", "kind", "detail"), events),
                                          ("bounds", ("quantity", "value"), bounds)],
                         force=args.force)
    print(f"dt={traj.dt:.6g} courant={traj.courant:g} closure step={traj.closure_step} "
          f"snapshots={len(traj.snapshots)}")
    for k, v in traj.bounds.items():
        print(f"{k} = {v:.6g}")
    print(f"wrote {len(paths)} files to {args.out}")
    return 0


def cmd_converge(args):
    levels = _levels(load_scenario(args.scenario), args.dx, _single(args.courant, "courant"))
    report = observed_order(levels, scheme=args.scheme)
    rows = []
    for i, ((dx, dt), err) in enumerate(zip(report.mesh_levels, report.errors)):
        order = report.observed_orders[i - 1] if i >= 1 and i - 1 < len(report.observed_orders) else ""
        rows.append((i, dx, dt, err, order))
        print(f"level {i}: dx={dx:g} dt={dt:.4g} error={err:.6e} order={order if order == '' else f'{order:.4f}'}")
    out = OutputDir(args.out, args.force)
    out.write_table("order.csv", ("level", "dx", "dt", "error", "order"), rows,
                    {"scheme": args.scheme, "reference": report.reference})
    return 0


def cmd_weak(args):
    scenario = load_scenario(args.scenario)
    dx_list = args.dx or [2 * scenario.dx, scenario.dx, scenario.dx / 2]
    levels = _levels(scenario, dx_list, _single(args.courant, "courant"))
    with ThreadPoolExecutor() as pool:
        trajs = list(pool.map(lambda s: run(s, Recording(stride=1), scheme=args.scheme), levels))
    report = weak_residual(trajs, t1_coefficient=args.t1_coefficient)
    rows = []
    for i, (dx, dt) in enumerate(report.mesh_levels):
        for k, bump in enumerate(report.test_functions):
            ratio = report.ratios[i - 1, k] if i >= 1 else ""
            rows.append((i, dx, dt, k, bump.describe().replace(",", ";"), report.residuals[i, k], ratio))
    for k, bump in enumerate(report.test_functions):
        ratios = " ".join(f"{r:.3f}" for r in report.ratios[:, k])
        print(f"bump {k} [{bump.describe()}]: ratios {ratios}")
    out = OutputDir(args.out, args.force)
    out.write_table("weak.csv", ("level", "dx", "dt", "bump", "support", "residual", "ratio"), rows,
                    {"scheme": args.scheme, "t1_coefficient": fmt(args.t1_coefficient)})
    return 0


def cmd_sweep(args):
    base = load_scenario(args.scenario)
    courants = args.courant or [base.courant]
    dxs = args.dx or [base.dx]
    probes = tuple(args.probes or [base.length_half / 2])
    cases = [(co, dx) for dx in dxs for co in courants]

    def one(case):
        co, dx = case
        scenario = base.replace(courant=co, dx=dx)
        return run(scenario, Recording(probes=probes, stride=args.stride), scheme=args.scheme)

    with ThreadPoolExecutor() as pool:
        trajs = list(pool.map(one, cases))
    out = OutputDir(args.out, args.force)
    rows = []
    for (co, dx), traj in zip(cases, trajs):
        emit_outputs(traj, OutputDir(out.path / f"co{co:.10g}_dx{dx:.10g}", args.force))
        for x in probes:
            series = traj.probe(x)
            m = surge_metrics(traj, x)
            try:
                period = oscillation_period_estimate(series, after=traj.t_close)
            except InsufficientDataError:
                period = float("nan")
            rows.append((co, dx, traj.dt, series.x_snapped, pressure_rise(traj, x),
                         m.overshoot, m.total_variation, period))
            print(f"Co={co:g} dx={dx:g} x={series.x_snapped:g}: overshoot={m.overshoot:.4f} "
                  f"TV={m.total_variation:.6g} period={period:.4g}")
    out.write_table("sweep.csv", ("courant", "dx", "dt", "x", "pressure_rise", "overshoot",
                                  "total_variation", "period"), rows, {"scheme": args.scheme})
    return 0


def cmd_moc(args):
    results = self_checks()
    for name, passed, detail in results:
        print(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
    if args.out is not None:
        OutputDir(args.out, args.force).write_table(
            "moc.csv", ("check", "passed", "detail"),
            [(n, str(p).lower(), d.replace(",", ";")) for n, p, d in results])
    return 0 if all(p for _, p, _ in results) else 1


COMMANDS = {"run": cmd_run, "converge": cmd_converge, "weak": cmd_weak,
            "sweep": cmd_sweep, "moc": cmd_moc}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalAbort as exc:
        print(f"numerical abort: {exc}", file=sys.stderr)
        return 3
    except OutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
