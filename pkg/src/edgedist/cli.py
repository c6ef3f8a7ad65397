"""Command-line interface.

Subcommands: table, moments, simulate, wishart, percentiles, verify.
Every output starts with '#' header lines recording the version, the
invoked flag set, and the seed when one is involved.  Writes are
atomic: output lands in a temp file first and is renamed into place.

Exit codes: 0 success, 1 verification threshold exceeded, 2 invalid
usage, 3 solver or sampling failure.
"""

import argparse
import io
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import __version__, dist, jet, oracle, painleve, rmt

_BETAS = (1, 2, 4)
_ENSEMBLE_BETA = {"goe": 1, "gue": 2, "gse": 4, "wishart": 1}
# grid wide enough that every supported (beta, m) has negligible mass
# outside it; needed by the moment quadrature
_MOMENT_GRID = (-13.0, 9.5, 0.0125)
_TABLE_GRID = (-13.0, 6.0, 0.01)


def _fmt(x):
    return f"{x:.15g}"


def _parse_m_list(text):
    try:
        ms = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("m must be a comma list of ints")
    if not ms or any(m < 1 for m in ms):
        raise argparse.ArgumentTypeError("m values must be >= 1")
    return ms


def _parse_float_list(text):
    try:
        vals = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma list of numbers")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _add_solver_flags(sp):
    d = painleve.SolverConfig()
    sp.add_argument("--solver.x-left", dest="solver_x_left", type=float,
                    default=d.x_left, help="left end of the solve interval")
    sp.add_argument("--solver.x-right", dest="solver_x_right", type=float,
                    default=d.x_right, help="right end of the solve interval")
    sp.add_argument("--solver.patch-point", dest="solver_patch_point",
                    type=float, default=d.patch_point,
                    help="where the asymptotic guess takes over")
    sp.add_argument("--solver.grid-step", dest="solver_grid_step",
                    type=float, default=d.grid_step,
                    help="output grid spacing")
    sp.add_argument("--solver.jet-order", dest="solver_jet_order", type=int,
                    default=d.jet_order, help="highest lambda-jet order")
    sp.add_argument("--solver.ode-tolerance", dest="solver_ode_tolerance",
                    type=float, default=d.ode_tolerance,
                    help="integrator tolerance")


def _add_output_flags(sp):
    sp.add_argument("--output", "-o", default=None,
                    help="output file (default: stdout)")
    sp.add_argument("--json", action="store_true",
                    help="emit one JSON document instead of CSV")


def _solver_config(args, s_min=None):
    x_left = args.solver_x_left
    if s_min is not None and s_min < x_left:
        x_left = s_min
    return painleve.SolverConfig(
        x_right=args.solver_x_right,
        x_left=x_left,
        patch_point=args.solver_patch_point,
        grid_step=args.solver_grid_step,
        jet_order=args.solver_jet_order,
        ode_tolerance=args.solver_ode_tolerance,
    )


def _header(args, seed=None):
    flags = " ".join(args.raw_argv)
    lines = [f"# edgedist {__version__}", f"# flags: {flags}"]
    if seed is not None:
        lines.append(f"# seed: {seed}")
    return lines


def _emit(args, text):
    if args.output is None:
        sys.stdout.write(text)
        return
    target = os.path.abspath(args.output)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target),
                               prefix=".edgedist-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _grid_from_args(args):
    if args.s is not None:
        # five-point stencil around s so the density has full accuracy
        return args.s + 1e-3 * np.arange(-2.0, 3.0), True
    lo, hi, step = args.s_min, args.s_max, args.s_step
    if not (hi > lo and step > 0):
        raise ValueError("need s-max > s-min and s-step > 0")
    n = int(round((hi - lo) / step)) + 1
    return np.linspace(lo, hi, n), False


def _table_payload(args, solve_grid, emit_grid, ms, beta, sol):
    blocks = []
    for m in ms:
        req = dist.DistRequest(beta=beta, m=m, s_grid=solve_grid)
        tab = dist.cdf(req, sol)
        F, f = tab.F, tab.f
        if args.tw_convention:
            f = f / math.sqrt(2.0)
        blocks.append({"beta": beta, "m": m,
                       "s": emit_grid, "F": F, "f": f})
    return blocks


def cmd_table(args):
    beta = args.beta
    ms = args.m
    if args.tw_convention and beta != 4:
        raise ValueError("--tw-convention applies to beta 4 only")
    raw_grid, single = _grid_from_args(args)
    # under the alternative normalization the table is the default one
    # read at s/sqrt(2)
    solve_grid = raw_grid / math.sqrt(2.0) if args.tw_convention else raw_grid
    cfg = _solver_config(args, s_min=float(solve_grid[0]))
    if max(ms) > cfg.jet_order:
        raise ValueError("m exceeds the solver jet order")
    sol = painleve.solve(cfg)
    blocks = _table_payload(args, solve_grid, raw_grid, ms, beta, sol)
    if single:
        for blk in blocks:
            blk["s"] = np.array([args.s])
            blk["F"] = blk["F"][2:3]
            blk["f"] = blk["f"][2:3]
    if args.json:
        doc = {"version": __version__, "flags": args.raw_argv,
               "tables": [{"beta": b["beta"], "m": b["m"],
                           "s": list(map(float, b["s"])),
                           "F": list(map(float, b["F"])),
                           "f": list(map(float, b["f"]))}
                          for b in blocks]}
        _emit(args, json.dumps(doc, indent=2) + "\n")
        return 0
    out = io.StringIO()
    for ln in _header(args):
        out.write(ln + "\n")
    for blk in blocks:
        out.write(f"# beta={blk['beta']} m={blk['m']}\n")
        out.write("s,F,f\n")
        for s, F, f in zip(blk["s"], blk["F"], blk["f"]):
            out.write(f"{_fmt(s)},{_fmt(F)},{_fmt(f)}\n")
    _emit(args, out.getvalue())
    return 0


def _moment_grid():
    lo, hi, step = _MOMENT_GRID
    n = int(round((hi - lo) / step)) + 1
    return np.linspace(lo, hi, n)


def cmd_moments(args):
    beta = args.beta
    ms = args.m
    grid = _moment_grid()
    cfg = _solver_config(args, s_min=float(grid[0]) - 0.5)
    if max(ms) > cfg.jet_order:
        raise ValueError("m exceeds the solver jet order")
    sol = painleve.solve(cfg)
    rows = []
    for m in ms:
        tab = dist.cdf(dist.DistRequest(beta=beta, m=m, s_grid=grid), sol)
        st = dist.moments(tab)
        rows.append((m, st))
    if args.json:
        doc = {"version": __version__, "flags": args.raw_argv,
               "moments": [{"beta": beta, "m": m, "mean": st.mean,
                            "sd": st.sd, "skewness": st.skewness,
                            "kurtosis": st.kurtosis} for m, st in rows]}
        _emit(args, json.dumps(doc, indent=2) + "\n")
        return 0
    out = io.StringIO()
    for ln in _header(args):
        out.write(ln + "\n")
    out.write("beta,m,mean,sd,skewness,kurtosis\n")
    for m, st in rows:
        out.write(f"{beta},{m},{_fmt(st.mean)},{_fmt(st.sd)},"
                  f"{_fmt(st.skewness)},{_fmt(st.kurtosis)}\n")
    _emit(args, out.getvalue())
    return 0


def _theory_tables(beta, top_k, args):
    grid = _moment_grid()
    cfg = _solver_config(args, s_min=float(grid[0]) - 0.5)
    if top_k > cfg.jet_order:
        raise ValueError("top-k exceeds the solver jet order")
    sol = painleve.solve(cfg)
    return [dist.cdf(dist.DistRequest(beta=beta, m=m, s_grid=grid), sol)
            for m in range(1, top_k + 1)]


def _ensemble_config(args):
    if args.ensemble == "wishart":
        if args.rows is None or args.cols is None:
            raise ValueError("wishart needs --rows and --cols")
        return rmt.EnsembleConfig(ensemble="wishart", reps=args.reps,
                                  seed=args.seed, top_k=args.top_k,
                                  rows=args.rows, cols=args.cols)
    if args.n is None:
        raise ValueError(f"{args.ensemble} needs --n")
    return rmt.EnsembleConfig(ensemble=args.ensemble, size=args.n,
                              reps=args.reps, seed=args.seed,
                              top_k=args.top_k)


def cmd_simulate(args):
    cfg = _ensemble_config(args)
    samples, failures = rmt.collect(cfg)
    if len(failures) > 0.001 * cfg.reps:
        first = failures[0]
        sys.stderr.write(
            f"error: {len(failures)} of {cfg.reps} reps failed "
            f"(first: rep {first.rep_index}: {first})\n")
        return 3
    stats = [rmt.summarize(samples[:, j]) for j in range(cfg.top_k)]
    report = None
    if args.percentiles:
        beta = _ENSEMBLE_BETA[cfg.ensemble]
        tables = _theory_tables(beta, cfg.top_k, args)
        report = rmt.percentile_report(samples, tables, args.percentiles)
    if args.json:
        doc = {"version": __version__, "flags": args.raw_argv,
               "seed": cfg.seed, "ensemble": cfg.ensemble,
               "failed_reps": len(failures),
               "stats": [{"k": j + 1, "mean": st.mean, "sd": st.sd,
                          "skewness": st.skewness, "kurtosis": st.kurtosis}
                         for j, st in enumerate(stats)],
               "samples": [[float(v) for v in row] for row in samples]}
        if report is not None:
            doc["percentiles"] = {
                "levels": list(report.percentiles),
                "ordinates": [list(r) for r in report.ordinates],
                "proportions": [list(r) for r in report.proportions]}
        _emit(args, json.dumps(doc, indent=2) + "\n")
        return 0
    out = io.StringIO()
    for ln in _header(args, seed=cfg.seed):
        out.write(ln + "\n")
    out.write(f"# failed reps: {len(failures)}\n")
    for j, st in enumerate(stats):
        out.write(f"# stats k={j + 1}: mean={_fmt(st.mean)} "
                  f"sd={_fmt(st.sd)} skewness={_fmt(st.skewness)} "
                  f"kurtosis={_fmt(st.kurtosis)}\n")
    out.write("rep,k,lhat\n")
    for i, row in enumerate(samples):
        for j, v in enumerate(row):
            out.write(f"{i},{j + 1},{_fmt(v)}\n")
    if report is not None:
        out.write("# percentile report\n")
        report.to_csv(out)
    _emit(args, out.getvalue())
    return 0


def cmd_wishart(args):
    args.ensemble = "wishart"
    args.n = None
    return cmd_simulate(args)


def _read_samples_csv(path):
    rows = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("rep,"):
                continue
            if line.startswith("percentile"):
                break
            rep, k, val = line.split(",")
            rows.setdefault(int(rep), {})[int(k)] = float(val)
    if not rows:
        raise ValueError("no samples found in input")
    ks = sorted(next(iter(rows.values())))
    data = np.array([[rows[r][k] for k in ks] for r in sorted(rows)])
    return data


def cmd_percentiles(args):
    samples = _read_samples_csv(args.input)
    top_k = samples.shape[1]
    tables = _theory_tables(args.beta, top_k, args)
    report = rmt.percentile_report(samples, tables, args.percentiles)
    if args.json:
        doc = {"version": __version__, "flags": args.raw_argv,
               "beta": args.beta,
               "levels": list(report.percentiles),
               "ordinates": [list(r) for r in report.ordinates],
               "proportions": [list(r) for r in report.proportions]}
        _emit(args, json.dumps(doc, indent=2) + "\n")
        return 0
    out = io.StringIO()
    for ln in _header(args):
        out.write(ln + "\n")
    report.to_csv(out)
    _emit(args, out.getvalue())
    return 0


def _verify_aj():
    a_jet = jet.aj_sequence(8, method="jet")
    a_rec = jet.aj_sequence(8, method="recursion")
    resid = max(abs(x - y) / max(abs(y), 1.0)
                for x, y in zip(a_jet, a_rec))
    return [("aj jets vs recursion (j <= 8)", resid, 1e-12)]


def _verify_oracle(args):
    sol = painleve.solve(_solver_config(args))
    pts = (-6.0, -4.0, -2.0, 0.0, 2.0, 4.0)
    r1 = max(abs(math.exp(-sol.jet_at(s).I.coeffs[0])
                 - oracle.nystrom_d2(s, 1.0, 200)) for s in pts)
    half = painleve.solve_at_lambda(0.5, _solver_config(args))
    r2 = 0.0
    for s in pts:
        i0 = half.at(s)[2]
        r2 = max(r2, abs(math.exp(-i0) - oracle.nystrom_d2(s, 0.5, 200)))
    r3 = 0.0
    for s in (-2.0, 0.0):
        b = sol.jet_at(s)
        closed = math.exp(-b.I.coeffs[0]) \
            * math.cosh(b.J.coeffs[0] / 2.0) ** 2
        r3 = max(r3, abs(closed - oracle.nystrom_d4(s, 200)))
    return [("d2 vs Nystrom, lambda=1", r1, 1e-8),
            ("d2 vs Nystrom, lambda=0.5", r2, 1e-6),
            ("d4 vs Nystrom, lambda=1", r3, 1e-6)]


def _verify_asymptotics(args):
    sol = painleve.solve(_solver_config(args))
    b = sol.jet_at(-8.0)
    q0_ref = painleve.q0_asymptotic(16.0)
    q1_ref = painleve.q1_asymptotic(16.0)
    r0 = abs(b.q.coeffs[0] - q0_ref) / abs(q0_ref)
    r1 = abs(b.q.coeffs[1] - q1_ref) / abs(q1_ref)
    return [("q0 at x=-8 vs asymptotic series", r0, 1e-6),
            ("q1 at x=-8 vs asymptotic series", r1, 1e-4)]


def _verify_interlacing(args):
    cfg = _solver_config(args, s_min=-13.5)
    sol = painleve.solve(cfg)
    r1 = dist.interlacing_residual(1, sol)
    r2 = dist.interlacing_residual(2, sol)
    return [("sup |F4(s,1) - F1(s,2)| on [-13, 6]", r1, 1e-5),
            ("sup |F4(s,2) - F1(s,4)| on [-13, 6]", r2, 1e-4)]


def cmd_verify(args):
    checks = {
        "aj": lambda: _verify_aj(),
        "oracle": lambda: _verify_oracle(args),
        "asymptotics": lambda: _verify_asymptotics(args),
        "interlacing": lambda: _verify_interlacing(args),
    }
    rows = checks[args.check]()
    ok = True
    lines = []
    for label, resid, tol in rows:
        status = "PASS" if resid <= tol else "FAIL"
        ok = ok and resid <= tol
        lines.append(f"{label}: max residual {resid:.3e} "
                     f"(threshold {tol:.0e}) {status}")
    if args.json:
        doc = {"version": __version__, "flags": args.raw_argv,
               "check": args.check, "passed": ok,
               "results": [{"label": l, "residual": r, "threshold": t}
                           for l, r, t in rows]}
        _emit(args, json.dumps(doc, indent=2) + "\n")
    else:
        _emit(args, "\n".join(lines) + "\n")
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="edgedist",
        description="Edge eigenvalue distributions: tables, moments, "
                    "simulation, verification.")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("table", help="CDF/density tables")
    sp.add_argument("--beta", type=int, choices=_BETAS, required=True)
    sp.add_argument("--m", type=_parse_m_list, default=[1],
                    help="comma list of eigenvalue indices")
    sp.add_argument("--s", type=float, default=None,
                    help="single evaluation point")
    sp.add_argument("--s-min", type=float, default=_TABLE_GRID[0])
    sp.add_argument("--s-max", type=float, default=_TABLE_GRID[1])
    sp.add_argument("--s-step", type=float, default=_TABLE_GRID[2])
    sp.add_argument("--tw-convention", action="store_true",
                    help="beta=4 tables with the sqrt(2)-rescaled argument")
    _add_solver_flags(sp)
    _add_output_flags(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("moments", help="mean/sd/skewness/kurtosis")
    sp.add_argument("--beta", type=int, choices=_BETAS, required=True)
    sp.add_argument("--m", type=_parse_m_list, default=[1])
    _add_solver_flags(sp)
    _add_output_flags(sp)
    sp.set_defaults(func=cmd_moments)

    def add_sim_flags(sp, with_ensemble):
        if with_ensemble:
            sp.add_argument("--ensemble", choices=sorted(_ENSEMBLE_BETA),
                            required=True)
            sp.add_argument("--n", type=int, default=None,
                            help="matrix dimension (Gaussian ensembles)")
        sp.add_argument("--rows", type=int, default=None,
                        help="Wishart sample count n")
        sp.add_argument("--cols", type=int, default=None,
                        help="Wishart dimension p")
        sp.add_argument("--reps", type=int, required=True)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--top-k", dest="top_k", type=int, default=1)
        sp.add_argument("--percentiles", type=_parse_float_list,
                        default=None,
                        help="emit a percentile report at these levels")
        _add_solver_flags(sp)
        _add_output_flags(sp)

    sp = sub.add_parser("simulate", help="Monte-Carlo ensemble sampling")
    add_sim_flags(sp, with_ensemble=True)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("wishart", help="Wishart sampling shortcut")
    add_sim_flags(sp, with_ensemble=False)
    sp.set_defaults(func=cmd_wishart)

    sp = sub.add_parser("percentiles",
                        help="percentile report for an existing sample CSV")
    sp.add_argument("--input", required=True, help="samples CSV path")
    sp.add_argument("--beta", type=int, choices=_BETAS, required=True)
    sp.add_argument("--percentiles", type=_parse_float_list, required=True)
    _add_solver_flags(sp)
    _add_output_flags(sp)
    sp.set_defaults(func=cmd_percentiles)

    sp = sub.add_parser("verify", help="cross-checks with thresholds")
    sp.add_argument("--check", required=True,
                    choices=("aj", "oracle", "asymptotics", "interlacing"))
    _add_solver_flags(sp)
    _add_output_flags(sp)
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    args.raw_argv = argv
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except painleve.SolverError as exc:
        sys.stderr.write(f"solver error: {exc}\n")
        return 3
    except rmt.SampleError as exc:
        sys.stderr.write(f"sampling error (rep {exc.rep_index}): {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
