"""Command line front end: ``sic analyze``, ``sic build-curve``, ``sic demo``."""

import argparse
import os
import sys

from . import io as sicio
from .builders.clustering import GREEDY_TRIALS
from .core import DEFAULT_LEVELS
from .demos import DEMOS
from .errors import CurveError, NumericalError
from .report import AnalysisConfig, analyze

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; exit status 2 is reserved for numerics
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    raw = os.environ.get("SIC_SEED")
    if raw is None or not raw.strip():
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CurveError(f"SIC_SEED must be an integer, got {raw!r}") from None


def _csv_floats(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _csv_ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def render_report(report, index_label="k") -> str:
    lines = []
    spec = report.spectrum
    header = f"K = {report.K}   lambda_max = {spec.lambda_max:.6g}   method = {spec.method}"
    if spec.samples is not None:
        header += f"   M = {spec.samples}"
    if spec.seed is not None:
        header += f"   seed = {spec.seed}"
    lines.append(header)
    if report.degenerate:
        lines.append("DEGENERATE: lambda_max = 0 (flat curve); every level selects k_E = 0")
    lines.append("")
    lines.append(f"{'k':>5} {'V(k)':>16} {'w_k':>10} {'W_k':>10}")
    for k in range(report.K + 1):
        W = "" if k == 0 else f"{report.cumulative[k - 1]:10.6f}"
        mark = "  *" if k in report.elbow_set else ""
        lines.append(f"{k:>5} {report.curve[k]:>16.8g} {spec.weights[k]:10.6f} {W:>10}{mark}")
    lines.append("")
    lines.append(f"index: {index_label}")
    elbows = ", ".join(str(k) for k in report.elbow_set) or "(empty)"
    lines.append(f"elbow set E = {{{elbows}}}   J = {report.J}")
    for level, k in report.chosen.items():
        lines.append(f"level {level:g}: k_E={k}")
    if report.baselines or report.skipped:
        lines.append("")
        lines.append("baselines:")
        for name, (lam, k) in report.baselines.items():
            lines.append(f"  {name:<5} λ={lam:.6g} → k={k}")
        for name, why in report.skipped.items():
            lines.append(f"  {name:<5} skipped ({why})")
    return "\n".join(lines)


def _config(args) -> AnalysisConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    levels = tuple(args.level) if args.level else DEFAULT_LEVELS
    return AnalysisConfig(method=args.method, M=args.M, seed=seed, levels=levels, normalize=not args.no_normalize)


def cmd_analyze(args) -> int:
    curve = sicio.read_curve_csv(args.curve)
    report = analyze(curve, _config(args), n_data=args.n_data)
    print(render_report(report))
    if args.json:
        sicio.write_json(report, args.json)
    if args.plot_data:
        sicio.write_plot_series(report, args.plot_data)
    return EXIT_OK


def cmd_build_curve(args) -> int:
    from .builders import clustering, ideal, regression, spectral

    sub = args.builder
    if sub == "ideal":
        curve = ideal.piecewise_linear_curve(ideal.PiecewiseLinearSpec(args.breakpoints, args.values))
    elif sub == "poly":
        m, _ = sicio.read_matrix_csv(args.input)
        if m.shape[1] != 2:
            raise CurveError(f"{args.input}: poly input needs exactly two columns x,y")
        curve = regression.polynomial_nll_curve(m[:, 0], m[:, 1], args.max_order)
    elif sub == "nested":
        data = sicio.read_dataset_csv(args.input, args.target)
        curve = regression.gaussian_nll_curve(data, include_intercept=not args.no_intercept, max_k=args.max_k)
    elif sub == "kmeans":
        m, _ = sicio.read_matrix_csv(args.input)
        seed = args.seed if args.seed is not None else _default_seed()
        curve = clustering.kmeans_variance_curve(
            m,
            args.max_k,
            restarts=args.restarts,
            seed=seed,
            variance=args.variance,
            init=args.init,
            trials=args.trials,
        )
    elif sub == "eigen":
        m, _ = sicio.read_matrix_csv(args.input)
        curve = spectral.eigen_curve(m, from_data=args.from_data)
    elif sub == "accuracy":
        m, _ = sicio.read_matrix_csv(args.input)
        curve = ideal.accuracy_curve(m[:, -1])
    else:  # pragma: no cover - argparse restricts the choices
        raise CurveError(f"unknown builder {sub!r}")
    sicio.write_curve_csv(curve, args.output)
    return EXIT_OK


def cmd_demo(args) -> int:
    demo = DEMOS[args.name]
    seed = args.seed if args.seed is not None else _default_seed()
    curve = demo.build(fast=args.fast, seed=seed)
    config = AnalysisConfig(method=args.method, M=args.M, seed=seed)
    report = analyze(curve, config, n_data=demo.n_data)
    print(f"demo {args.name}: {demo.description}")
    print(render_report(report, demo.index_label))
    print("")
    print(f"expected: {demo.expected}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sic", description="Spectral information criterion: elbow detection on error curves.")
    subs = parser.add_subparsers(dest="command", required=True)

    def weight_opts(p, default_method):
        p.add_argument("--method", choices=("exact", "grid", "mc"), default=default_method)
        p.add_argument("--M", type=int, default=10**6, help="samples for grid/mc (default 1e6)")
        p.add_argument("--seed", type=int, default=None, help="RNG seed (default $SIC_SEED or 0)")

    p = subs.add_parser("analyze", help="weights, elbows and selections for a k,V curve file")
    p.add_argument("curve", help="curve CSV with header k,V ('-' for stdin)")
    weight_opts(p, "exact")
    p.add_argument("--level", type=float, action="append", help="confidence level; repeatable (default 0.9 and 0.95)")
    p.add_argument("--n-data", type=int, default=None, help="number of observations, enables BIC and HQIC")
    p.add_argument("--no-normalize", action="store_true", help="do not subtract min V before weighting")
    p.add_argument("--json", metavar="FILE", help="write the report as JSON")
    p.add_argument("--plot-data", metavar="DIR", help="write plot series CSVs into DIR")
    p.set_defaults(func=cmd_analyze)

    p = subs.add_parser("build-curve", help="build a k,V curve from data")
    builders = p.add_subparsers(dest="builder", required=True)

    def out_opt(b):
        b.add_argument("-o", "--output", default=None, help="output CSV (default stdout)")

    b = builders.add_parser("ideal", help="piecewise-linear curve")
    b.add_argument("--breakpoints", type=_csv_ints, required=True)
    b.add_argument("--values", type=_csv_floats, required=True)
    out_opt(b)

    b = builders.add_parser("poly", help="polynomial order curve from an x,y CSV")
    b.add_argument("input")
    b.add_argument("--max-order", type=int, required=True)
    out_opt(b)

    b = builders.add_parser("nested", help="nested regression curve from a dataset CSV")
    b.add_argument("input")
    b.add_argument("--target", required=True, help="name of the target column")
    b.add_argument("--max-k", type=int, default=None)
    b.add_argument("--no-intercept", action="store_true")
    out_opt(b)

    b = builders.add_parser("kmeans", help="log within-cluster variance curve from a points CSV")
    b.add_argument("input")
    b.add_argument("--max-k", type=int, required=True, help="largest index; clusters = k + 1")
    b.add_argument("--restarts", type=int, default=200)
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--variance", choices=("mean", "sum"), default="mean")
    b.add_argument("--init", choices=("random", "k-means++", "greedy-k-means++"), default="greedy-k-means++")
    b.add_argument("--trials", type=int, default=GREEDY_TRIALS, help="candidates per greedy seeding step")
    out_opt(b)

    b = builders.add_parser("eigen", help="trace + eigenvalue curve from a covariance CSV")
    b.add_argument("input")
    b.add_argument("--from-data", action="store_true", help="input is an (n, d) data matrix")
    out_opt(b)

    b = builders.add_parser("accuracy", help="1 - accuracy curve (last column holds accuracies)")
    b.add_argument("input")
    out_opt(b)
    p.set_defaults(func=cmd_build_curve)

    p = subs.add_parser("demo", help="rerun a canned scenario end to end")
    p.add_argument("name", choices=sorted(DEMOS))
    weight_opts(p, "exact")
    p.add_argument("--fast", action="store_true", help="fewer k-means restarts in the clustering demo")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"sic: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (CurveError, OSError) as exc:
        print(f"sic: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
