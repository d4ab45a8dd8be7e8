"""Command line front end.

Subcommands expose the library's main operations (transform, convolve,
young, special, e-function, recover-s), a set of reproducible experiments,
and `verify`, which runs named suites of numerical checks and emits a
deterministic report: same inputs and seed give byte-identical output, and
the exit status is nonzero exactly when a check fails.
"""
import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import function_space as fs
from . import mellin_ops as mo
from . import special_functions as sf
from . import structure_space as ss
from .errors import MellinLabError
from .quadrature import QuadratureConfig
from .report import (VerificationReport, atomic_write, render_report,
                     render_table)

SUITES = ("algebra", "young", "special", "space", "witness", "recovery")


@dataclass(frozen=True)
class RunConfig:
    rel_tol: float = 1e-10
    max_depth: int = 12
    fmt: str = "csv"
    out: str = None
    seed: int = 0

    def quadrature(self):
        return QuadratureConfig(rel_tol=self.rel_tol,
                                max_refinement_depth=self.max_depth)


def parse_floats(text):
    """Comma list of reals; the bare token 'e' means Euler's number."""
    values = []
    for token in text.split(","):
        token = token.strip()
        values.append(math.e if token == "e" else float(token))
    if not values:
        raise ValueError("empty list")
    return values


def parse_counts(text):
    """'a..b' doubles from a to b; otherwise a comma list of integers."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if lo < 1 or hi < lo:
            raise ValueError(f"bad range {text!r}")
        out = []
        while lo <= hi:
            out.append(lo)
            lo *= 2
        return out
    return [int(tok) for tok in text.split(",")]


def parse_indices(text):
    """Semicolon list of alpha,beta pairs: '0,0;1,2'."""
    pairs = []
    for chunk in text.split(";"):
        alpha, beta = chunk.split(",")
        pairs.append((int(alpha), int(beta)))
    return pairs


def _loglog_slope(xs, ys):
    xs = np.log(np.asarray(xs, dtype=float))
    ys = np.log(np.maximum(np.asarray(ys, dtype=float), 1e-300))
    return float(np.polyfit(xs, ys, 1)[0])


# ---------------------------------------------------------------------------
# verify suites

def _suite_algebra(report, qcfg, rng):
    cat = fs.catalog()
    g0, g1, bump, th2 = (cat["log-gauss"], cat["exp-recip"], cat["bump"],
                         cat["theta2"])
    conv = mo.mellin_convolve(g0, g0, qcfg)
    report.add("self-convolution value at 1", "Sec. 3",
               abs(conv.pointwise(1.0).value - math.sqrt(math.pi / 2.0)),
               1e-9)
    report.add("transform of self-convolution at 1", "Sec. 5",
               abs(mo.mellin_transform(conv.function, 1.0, qcfg).value
                   - math.pi * math.exp(0.5)), 1e-8)

    probes = np.exp(rng.uniform(-1.5, 1.5, size=4))
    worst = 0.0
    for f, g in ((g0, g1), (g0, bump), (bump, th2)):
        ab = mo.mellin_convolve(f, g, qcfg).function
        ba = mo.mellin_convolve(g, f, qcfg).function
        worst = max(worst, float(np.max(np.abs(
            np.asarray(ab.value(probes)) - np.asarray(ba.value(probes))))))
    report.add("commutativity at random probes", "Thm 5", worst, 1e-6)

    f, g, h = g0, bump, th2
    left = mo.mellin_convolve(mo.mellin_convolve(f, g, qcfg).function,
                              h, qcfg).function
    right = mo.mellin_convolve(f, mo.mellin_convolve(g, h, qcfg).function,
                               qcfg).function
    worst = float(np.max(np.abs(np.asarray(left.value(probes))
                                - np.asarray(right.value(probes)))))
    report.add("associativity at random probes", "Thm 5", worst, 1e-5)

    mixed = mo.mellin_convolve(fs.add(g0, bump), g1, qcfg).function
    split = fs.add(mo.mellin_convolve(g0, g1, qcfg).function,
                   mo.mellin_convolve(bump, g1, qcfg).function)
    worst = float(np.max(np.abs(np.asarray(mixed.value(probes))
                                - np.asarray(split.value(probes)))))
    report.add("bilinearity at random probes", "Thm 5", worst, 1e-8)

    worst = 0.0
    for f, g in ((g0, g1), (g0, bump), (bump, th2)):
        for s in (-1.0, 0.0, 1.0, 2.0):
            worst = max(worst,
                        mo.convolution_theorem_residual(f, g, s, qcfg))
    report.add("convolution theorem residual", "Sec. 5", worst, 1e-6)

    worst = max(
        mo.convolution_derivative_residual(g0, g1, 1.0, 1, qcfg),
        mo.convolution_derivative_residual(g0, bump, 1.5, 2, qcfg))
    report.add("derivative under the integral", "Thm 4", worst, 1e-6)

    report.add("dilation compatibility", "Lemma 5",
               ss.dilation_identity_residual(g0, 2.0, 3.0, cfg=qcfg), 1e-9)


def _suite_young(report, qcfg, rng):
    cat = fs.catalog()
    g0, g1 = cat["log-gauss"], cat["exp-recip"]
    worst = 0.0
    for f, g in ((g0, g0), (g0, g1)):
        for p, q in ((1.0, 1.0), (2.0, 1.0), (1.5, 1.5), (4.0 / 3.0, 2.0)):
            _, _, margin = mo.young_inequality_check(f, g, p, q, qcfg)
            worst = max(worst, -margin)
    report.add("convolution norm inequality margins", "Thm 6",
               max(0.0, worst), 1e-9)
    lhs, rhs, _ = mo.young_inequality_check(g0, g0, 1.0, 1.0, qcfg)
    report.add("equality case p = q = 1", "Thm 6",
               max(abs(lhs - math.pi), abs(rhs - math.pi)), 1e-8)


def _suite_special(report, qcfg, rng):
    report.add("base value at 1/2", "Lemma 3", abs(sf.fabius(0.5) - 0.5), 0.0)
    report.add("base value at 1/4", "Lemma 3",
               abs(sf.fabius(0.25) - 5.0 / 72.0), 1e-16)
    x = np.linspace(0.0, 1.0, 2001)
    report.add("reflection symmetry", "Lemma 3",
               float(np.max(np.abs(sf.fabius(x) + sf.fabius(1.0 - x) - 1.0))),
               1e-12)
    xs = np.linspace(0.0, 0.5, 1001)
    report.add("rescaling differential equation", "Lemma 3",
               float(np.max(np.abs(sf.fabius_derivative(xs, 1)
                                   - 2.0 * sf.fabius(2.0 * xs)))), 1e-6)
    report.add("window normalization", "Lemma 3",
               abs(sf.eta(0.0) - 1.0) + abs(sf.eta(1.0)) + abs(sf.eta(-1.0)),
               0.0)
    worst = 0.0
    for beta in (1, 2, 3, 4):
        t_beta, value = sf.eta_extremal_check(beta)
        exact = 2.0 ** (beta * (beta + 1) // 2)
        worst = max(worst, abs(value - exact) / exact)
    report.add("window derivative extremals", "Lemma 3", worst, 1e-6)

    cat = fs.catalog()
    worst = 0.0
    for n in (2, 4, 8):
        theta = cat[f"theta{n}"]
        plateau = np.linspace(2.0 / n, float(n), 101)
        worst = max(worst, float(np.max(np.abs(theta.value(plateau) - 1.0))))
        outside = np.array([0.5 / n, n + 1.5])
        worst = max(worst, float(np.max(np.abs(theta.value(outside)))))
    report.add("cutoff plateau and support", "Lemma 4", worst, 0.0)
    worst = 0.0
    for n in (2, 4, 8):
        theta = cat[f"theta{n}"]
        for beta in (1, 2, 3, 4):
            bound = n ** beta * 2.0 ** (beta * (beta + 1) // 2)
            ratio = fs.seminorm(theta, (0, beta)) / bound
            worst = max(worst, ratio - 1.0)
    report.add("cutoff derivative bounds", "Lemma 4", max(0.0, worst), 1e-9)


def _suite_space(report, qcfg, rng):
    cat = fs.catalog()
    g0, g1, bump = cat["log-gauss"], cat["exp-recip"], cat["bump"]
    report.add("seminorm p_00 of the log square bell", "Sec. 2",
               abs(fs.seminorm(g0, (0, 0)) - 1.0), 1e-10)
    report.add("seminorm p_10 of the log square bell", "Sec. 2",
               abs(fs.seminorm(g0, (1, 0)) - math.exp(0.25)), 1e-10)
    p1 = fs.seminorm(fs.scale(g1, 2.5), (1, 1))
    p2 = fs.seminorm(g1, (1, 1))
    report.add("seminorm homogeneity", "Sec. 2",
               abs(p1 - 2.5 * p2) / (1.0 + abs(p1)), 1e-9)

    d_self, _ = fs.metric(g0, g0)
    report.add("metric self-distance", "Thm 1", d_self, 0.0)
    d_fg, _ = fs.metric(g0, bump)
    d_gf, _ = fs.metric(bump, g0)
    report.add("metric symmetry", "Thm 1", abs(d_fg - d_gf), 1e-12)
    d_fh, _ = fs.metric(g0, g1)
    d_hg, _ = fs.metric(g1, bump)
    report.add("metric triangle inequality", "Thm 1",
               max(0.0, d_fg - d_fh - d_hg), 1e-6)

    worst = 0.0
    for alpha, beta, p in ((0, 0, 1.0), (1, 0, 2.0), (-1, 1, 1.0)):
        lhs, rhs, _ = fs.weighted_lp_bound_check(g0, alpha, beta, p, qcfg)
        worst = max(worst, lhs - rhs)
    report.add("weighted integrability bound", "Lemma 1",
               max(0.0, worst), 1e-9)

    rows = fs.density_experiment(g0, (0, 0), [4, 8, 16, 32, 64])
    slope = _loglog_slope([r[0] for r in rows], [r[1] for r in rows])
    report.add("compact truncation error slope", "Thm 3",
               max(0.0, slope + 0.8), 0.0)


def _suite_witness(report, qcfg, rng):
    ms = [2, 4, 8, 16, 32]
    sups, blows = [], []
    for m in ms:
        _, constraint_sups, blowup = fs.nonnormability_witness(
            [(0, 0)], 1.0, m)
        sups.append(max(constraint_sups))
        blows.append(blowup)
    report.add("witness stays inside the constraint ball", "Thm 2",
               max(sups), 1.0 - 1e-9)
    ratios = [b2 / b1 for b1, b2 in zip(blows[:-1], blows[1:])]
    report.add("witness blowup doubling ratio", "Thm 2",
               max(0.0, 1.5 - min(ratios)), 0.0)
    report.add("witness blowup slope", "Thm 2",
               abs(_loglog_slope(ms, blows) - 1.0), 0.15)


def _suite_recovery(report, qcfg, rng):
    cat = fs.catalog()
    bases = [cat["log-gauss"], cat["exp-recip"], cat["bump"]]
    worst_est, worst_spread = 0.0, 0.0
    for s in (-2.25, 0.0, 1.5, 3.0):
        m = ss.functional_ms(s, qcfg)
        for base in bases:
            rep = ss.recover_exponent(m, base)
            worst_est = max(worst_est, abs(rep.s_estimate - s))
            worst_spread = max(worst_spread, rep.consistency_residual)
    report.add("exponent recovery accuracy", "Thm 7", worst_est, 1e-6)
    report.add("recovery consistency residual", "Thm 7", worst_spread, 1e-6)

    fake = ss.additive_mixture_functional(1.0, 2.0, qcfg)
    rep = ss.recover_exponent(fake, cat["log-gauss"])
    report.add("non-multiplicative box is flagged", "Thm 7",
               max(0.0, 0.01 - rep.consistency_residual), 0.0)

    report.add("separating function vanishes on the diagonal", "Lemma 7",
               abs(ss.e_function(0.0, 0.0, qcfg)), 1e-10)
    grid = [-2.0, -1.0, 0.0, 1.0, 2.0]
    mono = ss.e_monotonicity_check(0.0, grid, qcfg)
    report.add("separating function is increasing", "Lemma 7",
               0.0 if mono else 1.0, 0.5)
    sign_defect = (max(0.0, -ss.e_function(0.0, 1.0, qcfg))
                   + max(0.0, ss.e_function(0.0, -1.0, qcfg)))
    report.add("separating function sign pattern", "Lemma 7",
               sign_defect, 0.0)

    th2 = cat["theta2"]
    worst = 0.0
    for s in (5.0, 10.0, 20.0):
        lower = (2.0 ** s - 1.0) / s
        value = mo.mellin_transform(th2, s, qcfg).value
        worst = max(worst, lower - value)
    report.add("transform does not vanish at infinity", "Sec. 5",
               max(0.0, worst), 0.0)


_SUITE_RUNNERS = {
    "algebra": _suite_algebra,
    "young": _suite_young,
    "special": _suite_special,
    "space": _suite_space,
    "witness": _suite_witness,
    "recovery": _suite_recovery,
}


# ---------------------------------------------------------------------------
# subcommands

def _emit(run, text):
    if run.out:
        atomic_write(run.out, text)
    else:
        sys.stdout.write(text)


def cmd_transform(args, run):
    f = fs.catalog()[args.f]
    qcfg = run.quadrature()
    rows = []
    for s in parse_floats(args.s):
        r = mo.mellin_transform(f, s, qcfg)
        rows.append((s, r.value, r.error_estimate))
    _emit(run, render_table(("s", "value", "error_estimate"), rows, run.fmt))
    return 0


def cmd_convolve(args, run):
    cat = fs.catalog()
    conv = mo.mellin_convolve(cat[args.f], cat[args.g], run.quadrature())
    rows = []
    for x in parse_floats(args.x):
        r = conv.pointwise(x)
        rows.append((x, r.value, r.error_estimate))
    _emit(run, render_table(("x", "value", "error_estimate"), rows, run.fmt))
    return 0


def cmd_young(args, run):
    cat = fs.catalog()
    lhs, rhs, margin = mo.young_inequality_check(
        cat[args.f], cat[args.g], args.p, args.q, run.quadrature())
    rows = [(args.p, args.q, lhs, rhs, margin)]
    _emit(run, render_table(("p", "q", "lhs", "rhs", "margin"), rows, run.fmt))
    return 0


def cmd_special(args, run):
    xs = np.asarray(parse_floats(args.x))
    if args.fn == "fabius":
        values = sf.fabius_derivative(xs, args.order)
    elif args.fn == "eta":
        values = sf.eta_derivative(xs, args.order)
    else:
        values = fs.cutoff_function(args.n).derivative(args.order, xs)
    rows = [(float(x), float(v), args.order) for x, v in zip(xs, values)]
    _emit(run, render_table(("x", "value", "order"), rows, run.fmt))
    return 0


def cmd_verify(args, run):
    names = SUITES if args.suite == "all" else (args.suite,)
    report = VerificationReport(suite=args.suite, seed=run.seed)
    rng = np.random.default_rng(run.seed)
    qcfg = run.quadrature()
    for name in names:
        _SUITE_RUNNERS[name](report, qcfg, rng)
    _emit(run, render_report(report, run.fmt))
    return 1 if report.failures else 0


def _recovery_rows(args, run):
    cat = fs.catalog()
    m = ss.functional_ms(args.s_hidden, run.quadrature())
    rep = ss.recover_exponent(m, cat[args.base],
                              probes=tuple(parse_floats(args.probes)))
    rows = [(x, phi) for x, phi in rep.phi_samples]
    rows.append(("s_estimate", rep.s_estimate))
    rows.append(("consistency", rep.consistency_residual))
    return rows


def cmd_recover_s(args, run):
    rows = _recovery_rows(args, run)
    _emit(run, render_table(("x", "phi"), rows, run.fmt))
    return 0


def cmd_experiment(args, run):
    if args.name == "density":
        f = fs.catalog()[args.f]
        idx = parse_indices(args.indices)[0]
        rows = fs.density_experiment(f, idx, parse_counts(args.n))
        slope = _loglog_slope([r[0] for r in rows], [r[1] for r in rows])
        rows = [(int(n), float(e)) for n, e in rows]
        rows.append(("slope", slope))
        _emit(run, render_table(("n", "error"), rows, run.fmt))
        return 0
    if args.name == "nonnormability":
        indices = parse_indices(args.indices)
        ms = parse_counts(args.m)
        rows = []
        for m in ms:
            _, sups, blow = fs.nonnormability_witness(indices, args.eps, m)
            rows.append((m, max(sups), blow))
        cs = _loglog_slope(ms, [r[1] for r in rows])
        bs = _loglog_slope(ms, [r[2] for r in rows])
        rows.append(("slope", cs, bs))
        _emit(run, render_table(("m", "constraint_max", "blowup"), rows,
                                run.fmt))
        return 0
    rows = _recovery_rows(args, run)
    _emit(run, render_table(("x", "phi"), rows, run.fmt))
    return 0


def cmd_e_function(args, run):
    qcfg = run.quadrature()
    grid = parse_floats(args.grid)
    rows = []
    for s in grid:
        r = ss.e_function_result(args.c, s, qcfg)
        rows.append((s, r.value, r.error_estimate))
    mono = ss.e_monotonicity_check(args.c, grid, qcfg) \
        if len(grid) >= 2 else True
    rows.append(("monotone", 1.0 if mono else 0.0, 0.0))
    _emit(run, render_table(("s", "value", "error_estimate"), rows, run.fmt))
    return 0


# ---------------------------------------------------------------------------

def build_parser():
    labels = sorted(fs.catalog())
    # Global flags live on a parent parser so they are accepted both before
    # and after the subcommand; SUPPRESS keeps a flag given before the
    # subcommand from being clobbered by the subparser's default.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rel-tol", type=float, default=argparse.SUPPRESS)
    common.add_argument("--max-depth", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("csv", "json"), dest="fmt",
                        default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS,
                        help="write output to a file (atomically) instead "
                             "of stdout")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="mellinlab", parents=[common],
        description="numerical laboratory for the multiplicative "
                    "convolution algebra of rapidly decreasing functions")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("transform", help="Mellin transform values")
    p.add_argument("--f", choices=labels, required=True)
    p.add_argument("--s", required=True, help="comma list of exponents")
    p.set_defaults(func=cmd_transform)

    p = add_parser("convolve", help="convolution values with error bars")
    p.add_argument("--f", choices=labels, required=True)
    p.add_argument("--g", choices=labels, required=True)
    p.add_argument("--x", required=True, help="comma list of points")
    p.set_defaults(func=cmd_convolve)

    p = add_parser("young", help="norm inequality for one exponent pair")
    p.add_argument("--f", choices=labels, required=True)
    p.add_argument("--g", choices=labels, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.set_defaults(func=cmd_young)

    p = add_parser("special", help="special function samples")
    p.add_argument("--fn", choices=("fabius", "eta", "cutoff"),
                   required=True)
    p.add_argument("--order", type=int, default=0)
    p.add_argument("--x", required=True, help="comma list of points")
    p.add_argument("--n", type=int, default=2, help="cutoff index")
    p.set_defaults(func=cmd_special)

    p = add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    p.set_defaults(func=cmd_verify)

    p = add_parser("experiment", help="reproducible experiments")
    p.add_argument("name", choices=("density", "nonnormability", "recovery"))
    p.add_argument("--f", choices=labels, default="log-gauss")
    p.add_argument("--indices", default="0,0")
    p.add_argument("--n", default="4..64")
    p.add_argument("--m", default="2..64")
    p.add_argument("--eps", type=float, default=1.0)
    p.add_argument("--s-hidden", type=float, default=1.5)
    p.add_argument("--base", choices=labels, default="log-gauss")
    p.add_argument("--probes", default="e,2,0.5")
    p.set_defaults(func=cmd_experiment)

    p = add_parser("recover-s", help="identify a hidden functional")
    p.add_argument("--s-hidden", type=float, required=True)
    p.add_argument("--base", choices=labels, default="log-gauss")
    p.add_argument("--probes", default="e,2,0.5")
    p.set_defaults(func=cmd_recover_s)

    p = add_parser("e-function", help="separating function values")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--grid", required=True, help="comma list of exponents")
    p.set_defaults(func=cmd_e_function)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    # Global flags carry default=SUPPRESS (so a value given before the
    # subcommand survives the subparser pass); fill real defaults here.
    run = RunConfig(rel_tol=getattr(args, "rel_tol", 1e-10),
                    max_depth=getattr(args, "max_depth", 12),
                    fmt=getattr(args, "fmt", "csv"),
                    out=getattr(args, "out", None),
                    seed=getattr(args, "seed", 0))
    try:
        return args.func(args, run)
    except (MellinLabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
