"""Command-line front end: every experiment as a subcommand.

Each run writes one CSV (plus a rendered PNG next to it unless --no-plot)
and a `<output>.meta` sidecar with the full configuration.  All numerics
live in the library modules; the handlers below only parse flags, call one
module entry point, and format rows.  Identical configurations produce
byte-identical CSV files; Monte-Carlo output depends only on
(seed, chunks), never on scheduling.
"""
from __future__ import annotations

import argparse
import math
import sys
import time
from dataclasses import dataclass, field

from . import __version__, cumulants, dedekind, density, geodesics, plots, specialfn
from .charfn import LambdaGrid, counterexample_fourier_grid, inverse_fourier_limit


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


@dataclass
class RunConfig:
    subcommand: str
    params: dict
    seed: int
    chunks: int
    output_path: str
    plot: bool = True
    meta_extra: dict = field(default_factory=dict)


def _write_csv(path: str, header: str, rows) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_meta(config: RunConfig, wall: float) -> None:
    with open(config.output_path + ".meta", "w", newline="\n") as fh:
        fh.write(f"command={config.subcommand}\n")
        for key in sorted(config.params):
            fh.write(f"{key}={config.params[key]}\n")
        for key in sorted(config.meta_extra):
            fh.write(f"{key}={config.meta_extra[key]}\n")
        fh.write(f"seed={config.seed}\n")
        fh.write(f"chunks={config.chunks}\n")
        fh.write(f"output={config.output_path}\n")
        fh.write(f"version={__version__}\n")
        fh.write(f"wall_clock_seconds={wall:.3f}\n")


# --- handlers: each returns (header, rows, plot_fn or None) -----------------

def _run_iid_modgauss(args, config):
    base = cumulants.BaseLaw.two_point()
    grid = LambdaGrid.linspace(args.lambda_min, args.lambda_max, args.points)
    c_top = base.cumulant(args.k + 1)
    rows = []
    for n in args.n:
        tr = cumulants.cum1_trace(base, args.k, n, grid)
        rows += [(lam, v.real, v.imag, "renormalized-sum", n)
                 for lam, v in zip(grid.points, tr.values)]
    limit = [cumulants.cum1_limit(args.k, c_top, lam) for lam in grid.points]
    rows += [(lam, v.real, v.imag, "limit", "")
             for lam, v in zip(grid.points, limit)]
    def render(path):
        series = {}
        for n in args.n:
            series[f"n={n}"] = [r[1] for r in rows if r[4] == n]
        series["limit"] = [v.real for v in limit]
        plots.plot_series(path, grid.points, series, "lambda", "Re",
                          f"renormalized i.i.d. sum, k={args.k}")
    return "lambda,re,im,label,n", rows, render


def _run_density_check(args, config):
    coeffs = [float(v) for v in args.poly.split(",")]
    report = density.find_sigma0(coeffs, args.radius_factor, args.points,
                                 args.sigma_init)
    rows = [(report.sigma, report.min_value, report.integral,
             report.grid_radius, report.grid_points)]
    config.meta_extra["certified"] = str(report.certified).lower()
    def render(path):
        import numpy as np
        xs = np.linspace(-8 * report.sigma, 8 * report.sigma, 1201)
        plots.plot_density(path, xs, density.g_density(coeffs, report.sigma, xs),
                           report.sigma)
    return "sigma,min_value,integral,grid_radius,grid_points", rows, render


def _run_dedekind_figure(args, config):
    tr = dedekind.figure_trace(args.t, args.n_max, args.stride)
    config.meta_extra["window"] = tr.window
    rows = [(args.t, n, v) for n, v in tr.rows]
    return "t,N,value", rows, lambda path: plots.plot_figure_rows(path, args.t, tr.rows)


def _run_vardi_phi(args, config):
    if args.quadrature:
        value = dedekind.vardi_phi_quadrature(args.t, args.n_theta, args.n_u)
        err = 0.0
        samples = args.n_theta * args.n_u
        config.meta_extra["method"] = "tensor-quadrature"
    else:
        value, err = dedekind.vardi_phi(args.t, args.samples, config.seed,
                                        config.chunks)
        samples = args.samples
        config.meta_extra["method"] = "monte-carlo"
    rows = [(args.t, value, err, samples, config.seed)]
    return "t,value,std_error,samples,seed", rows, None


def _run_vardi_law(args, config):
    ns = args.n or [5000]
    rows = [(n, dedekind.vardi_law_check(n)) for n in ns]
    render = None
    if len(rows) > 1:
        def render(path):
            plots.plot_series(path, [r[0] for r in rows],
                              {"KS distance": [r[1] for r in rows]},
                              "N", "KS distance", "distance to the Cauchy law")
    return "N,ks_distance", rows, render


def _run_geodesics(args, config):
    ens = geodesics.enumerate_classes(args.x)
    config.meta_extra["classes"] = str(ens.size)
    config.meta_extra["total_length"] = _fmt(ens.total_length)
    rows = [(g.trace, g.norm, g.length, g.psi, g.word) for g in ens.classes]
    return ("trace,norm,length,psi,word", rows,
            lambda path: plots.plot_classes(path, ens.classes))


def _run_sarnak(args, config):
    value = geodesics.sarnak_trace(args.t, args.x, exploratory=args.exploratory)
    inside = abs(args.t) <= geodesics.SARNAK_WINDOW
    limit = geodesics.phi1(args.t) if inside else math.nan
    config.meta_extra["window"] = "proven" if inside else "exploratory"
    return "t,x,value,phi1", [(args.t, args.x, value, limit)], None


def _run_selberg(args, config):
    xs = args.x or [1e5]
    rows = []
    for x in xs:
        ens = geodesics.enumerate_classes(x)
        rows.append((x, ens.total_length / x, ens.size))
    render = None
    if len(rows) > 1:
        def render(path):
            plots.plot_series(path, [r[0] for r in rows],
                              {"ratio": [r[1] for r in rows]},
                              "x", "sum of lengths / x", "prime geodesic normalization")
    return "x,ratio,count", rows, render


def _run_wieand_limit(args, config):
    import numpy as np
    ts = np.linspace(args.t_min, args.t_max, args.points)
    vals = [specialfn.wieand_limit(t, args.gamma) for t in ts]
    rows = [(t, v, 0.0, f"arc-count-limit gamma={args.gamma:g}")
            for t, v in zip(ts, vals)]
    def render(path):
        plots.plot_series(path, ts, {"limit": vals}, "t", "value",
                          f"arc eigenvalue-count limit, gamma = {args.gamma:g}")
    return "lambda,re,im,label", rows, render


def _run_counterexample(args, config):
    import numpy as np
    lams = np.linspace(args.lambda_min, args.lambda_max, args.points)
    which = ["A", "B"] if args.which == "both" else [args.which]
    rows = []
    series = {}
    for name in which:
        vals = counterexample_fourier_grid(name, lams)
        series[name] = vals
        rows += [(lam, v, 0.0, name) for lam, v in zip(lams, vals)]
    def render(path):
        plots.plot_series(path, lams, series, "lambda", "Fourier transform",
                          "two measures, one transform on [-1/2, 1/2]")
    return "lambda,re,im,label", rows, render


def _run_invert_limit(args, config):
    import numpy as np
    xs = np.linspace(args.x_min, args.x_max, args.points)
    vals = inverse_fourier_limit(args.k, args.c, xs)
    rows = list(zip(xs, vals))
    def render(path):
        plots.plot_series(path, xs, {"H": vals}, "x", "H(x)",
                          f"inverse transform of exp(c (i lam)^{args.k + 1}/({args.k + 1})!)")
    return "x,value", rows, render


_HANDLERS = {
    "iid-modgauss": _run_iid_modgauss,
    "density-check": _run_density_check,
    "dedekind-figure": _run_dedekind_figure,
    "vardi-phi": _run_vardi_phi,
    "vardi-law": _run_vardi_law,
    "geodesics": _run_geodesics,
    "sarnak": _run_sarnak,
    "selberg": _run_selberg,
    "wieand-limit": _run_wieand_limit,
    "counterexample": _run_counterexample,
    "invert-limit": _run_invert_limit,
}


def _add_common(p: argparse.ArgumentParser, default_output: str) -> None:
    p.add_argument("--output", default=default_output, help="CSV output path")
    p.add_argument("--seed", type=int, default=0, help="base seed for counter-based streams")
    p.add_argument("--chunks", type=int, default=1,
                   help="declared partition count; results depend only on (seed, chunks)")
    p.add_argument("--no-plot", action="store_true",
                   help="skip rendering the PNG next to the CSV")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modstar",
        description="Renormalized characteristic-function experiments; "
                    "CSV plus rendered figure per run.")
    parser.add_argument("--version", action="version", version=f"modstar {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_command(name, help_text):
        return sub.add_parser(name, help=help_text, description=help_text)

    p = add_command("iid-modgauss",
                    "renormalized cf of scaled i.i.d. +-1 sums vs its limit")
    p.add_argument("--k", type=int, default=3, help="moment-matching order (base law fits k <= 3)")
    p.add_argument("--n", type=lambda s: [int(v) for v in s.split(",")],
                   default=[1000000], help="summand count, comma-separated to sweep")
    p.add_argument("--lambda-min", type=float, default=-2.0)
    p.add_argument("--lambda-max", type=float, default=2.0)
    p.add_argument("--points", type=int, default=81)
    _add_common(p, "iid_modgauss.csv")

    p = add_command("density-check",
                    "certify the smallest width making the constructed density nonnegative")
    p.add_argument("--poly", default="1,0,1",
                   help="polynomial coefficients, constant term first (must be 1)")
    p.add_argument("--radius-factor", type=float, default=6.0,
                   help="scan radius = radius-factor * sigma^2")
    p.add_argument("--points", type=int, default=0, help="scan grid size (0 = automatic)")
    p.add_argument("--sigma-init", type=float, default=1.0)
    _add_common(p, "density_check.csv")

    p = add_command("dedekind-figure",
                    "renormalized Dedekind-sum trace over N "
                    "(limit exists for |t| < 4pi/3; uniform expansion for "
                    "|t| < 2pi; larger t is exploratory and labeled so)")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--n-max", type=int, default=5000)
    p.add_argument("--stride", type=int, default=10)
    _add_common(p, "dedekind_figure.csv")

    p = add_command("vardi-phi",
                    "limiting function of the Dedekind-sum trace (pole at |t| = 4pi)")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--samples", type=int, default=1000000)
    p.add_argument("--quadrature", action="store_true",
                   help="deterministic tensor quadrature instead of Monte-Carlo")
    p.add_argument("--n-theta", type=int, default=256)
    p.add_argument("--n-u", type=int, default=256)
    _add_common(p, "vardi_phi.csv")

    p = add_command("vardi-law",
                    "KS distance of normalized Dedekind sums to the Cauchy law")
    p.add_argument("--n", type=int, action="append",
                   help="ensemble bound N (repeatable; default 5000)")
    _add_common(p, "vardi_law.csv")

    p = add_command("geodesics",
                    "primitive hyperbolic classes with norm <= x")
    p.add_argument("--x", type=float, required=True)
    _add_common(p, "geodesics.csv")

    p = add_command("sarnak",
                    "renormalized winding-number trace (proven window |t| <= pi/12)")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--exploratory", action="store_true",
                   help="evaluate beyond |t| = pi/12 without any convergence claim")
    _add_common(p, "sarnak.csv")

    p = add_command("selberg",
                    "prime-geodesic normalization check: sum of lengths over x")
    p.add_argument("--x", type=float, action="append",
                   help="norm cutoff (repeatable; default 1e5)")
    _add_common(p, "selberg.csv")

    p = add_command("wieand-limit",
                    "arc eigenvalue-count limit (restricted window |t| < pi)")
    p.add_argument("--gamma", type=float, default=0.125, help="arc half-length in (0, 1/2)")
    p.add_argument("--t-min", type=float, default=-3.0)
    p.add_argument("--t-max", type=float, default=3.0)
    p.add_argument("--points", type=int, default=121)
    _add_common(p, "wieand_limit.csv")

    p = add_command("counterexample",
                    "Fourier transforms of two laws that agree only on [-1/2, 1/2]")
    p.add_argument("--which", choices=["A", "B", "both"], default="both")
    p.add_argument("--lambda-min", type=float, default=-1.5)
    p.add_argument("--lambda-max", type=float, default=1.5)
    p.add_argument("--points", type=int, default=121)
    _add_common(p, "counterexample.csv")

    p = add_command("invert-limit",
                    "inverse transform of exp(c (i lam)^{k+1}/(k+1)!); "
                    "needs k+1 even and decaying sign")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--c", type=float, default=-2.0)
    p.add_argument("--x-min", type=float, default=-6.0)
    p.add_argument("--x-max", type=float, default=6.0)
    p.add_argument("--points", type=int, default=121)
    _add_common(p, "invert_limit.csv")

    return parser


def run(config: RunConfig, args) -> int:
    start = time.time()
    try:
        header, rows, render = _HANDLERS[config.subcommand](args, config)
    except ValueError as err:
        print(f"modstar {config.subcommand}: {err}", file=sys.stderr)
        return 1
    _write_csv(config.output_path, header, rows)
    if config.plot and render is not None:
        render(plots.png_path(config.output_path))
    _write_meta(config, time.time() - start)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    skip = {"command", "output", "seed", "chunks", "no_plot"}
    params = {k.replace("_", "-"): v for k, v in vars(args).items() if k not in skip}
    config = RunConfig(
        subcommand=args.command,
        params=params,
        seed=args.seed,
        chunks=args.chunks,
        output_path=args.output,
        plot=not args.no_plot,
    )
    return run(config, args)


if __name__ == "__main__":
    sys.exit(main())
