"""Command line front end: ``ginibre {eval,validate,converge,sample,figures}``.

Exit codes: 0 success, 1 validation failure, 2 bad input, 3 budget exhausted.
"""

import argparse
import configparser
import csv
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .convergence import log10_distance
from .correlation import SpectralConfiguration, correlation, kernel_function
from .montecarlo import accumulate_density, real_count_stats, sample_ginoe, sample_ginue
from .regimes import (
    ComplexBulk,
    ComplexEdge,
    ComplexGinibreBulk,
    ComplexGinibreEdge,
    ComplexGinibreFinite,
    FiniteN,
    make_regime,
    regime_label,
)
from .validation import BudgetExhausted, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

REAL_OBSERVABLES = ("R_10", "R_20", "R_11", "K_ds", "K_s", "K_s_swapped", "K_is")
OBSERVABLES = REAL_OBSERVABLES + ("R_01", "R_02")
COMPLEX_ONLY = (ComplexBulk, ComplexEdge, ComplexGinibreFinite, ComplexGinibreBulk, ComplexGinibreEdge)

# Figure presets: limit regimes with offsets from the zoom point.
PRESETS = {
    "fig:1": {"regime": "origin", "observable": "R_20", "grid": "-6:6:241"},
    "fig:2": {"regime": "origin", "observable": "R_11", "grid": "-4:4:81,0.05:4:80"},
    "fig:3": {"regime": "origin", "observable": "R_01", "grid": "0.02:5:250"},
    "fig:4": {"regime": "complex-bulk", "observable": "R_02", "grid": "-3:3:61,-3:3:61"},
    "fig:5": {"regime": "real-edge", "u_re": "1", "observable": "R_10", "grid": "-6:6:241"},
    "fig:6": {"regime": "real-edge", "u_re": "1", "observable": "R_01", "grid": "-6:3:91,0.05:4:80"},
    "fig:7": {"regime": "real-edge", "u_re": "1", "observable": "R_20", "grid": "-6:4:51,-6:4:51"},
    "fig:8": {"regime": "complex-edge", "u_re": "0", "u_im": "1", "observable": "R_01", "grid": "-4:4:161"},
}

OBSERVABLE_DOC = """\
observables (grid coordinates are absolute for 'finite', offsets otherwise):
  R_10  1-d x: R_10(x)
  R_20  1-d x: R_20(x, 0);      2-d (x, y): R_20(x, y)
  R_11  2-d (x, y): R_11(x, iy)
  R_01  1-d t: R_01(it);        2-d (x, y): R_01(x + iy)
  R_02  1-d t: R_02(0, t);      2-d (x, y): R_02(0, x + iy)
  K_ds, K_s, K_s_swapped, K_is  kernel block entry at real (x, y); 1-d: (x, 0)
"""


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# -- grids and evaluation ------------------------------------------------------


def parse_axis(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError("axis %r must look like lo:hi:steps" % text)
    try:
        lo, hi = float(parts[0]), float(parts[1])
        n = int(parts[2])
    except ValueError:
        raise InputError("axis %r must look like lo:hi:steps" % text) from None
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise InputError("axis range must be finite")
    if n < 2:
        raise InputError("axis %r needs at least 2 steps" % text)
    return np.linspace(lo, hi, n)


def parse_grid(text):
    axes = [parse_axis(a) for a in text.split(",")]
    if len(axes) not in (1, 2):
        raise InputError("grid must have one or two axes")
    return axes


def evaluate(regime, observable, coords):
    """Value of the observable at one grid node (a tuple of 1 or 2 floats)."""
    dim = len(coords)
    x = coords[0]
    y = coords[1] if dim == 2 else None
    if observable.startswith("K_"):
        b = 0.0 if y is None else y
        blk = kernel_function(regime)(x, b)
        entry = {"K_ds": blk.ds, "K_s": blk.s, "K_s_swapped": blk.s_swapped, "K_is": blk.is_plus_e}[observable]
        return complex(entry).real
    if observable == "R_10":
        if dim != 1:
            raise InputError("R_10 takes a 1-d grid")
        cfg = SpectralConfiguration(reals=(x,))
    elif observable == "R_20":
        cfg = SpectralConfiguration(reals=(x, 0.0 if y is None else y))
    elif observable == "R_11":
        if dim != 2:
            raise InputError("R_11 takes a 2-d grid")
        cfg = SpectralConfiguration(reals=(x,), uppers=(complex(0.0, y),))
    elif observable == "R_01":
        z = complex(0.0, x) if dim == 1 else complex(x, y)
        cfg = SpectralConfiguration(uppers=(z,))
    elif observable == "R_02":
        z = complex(x, 0.0) if dim == 1 else complex(x, y)
        if isinstance(regime, COMPLEX_ONLY):
            cfg = SpectralConfiguration(uppers=(0j, z))
        else:
            raise InputError("R_02 is only available for the complex regimes")
    else:
        raise InputError("unknown observable %r" % observable)
    return correlation(regime, cfg)


def check_compatible(regime, observable):
    if observable not in OBSERVABLES:
        raise InputError("unknown observable %r (choose from %s)" % (observable, ", ".join(OBSERVABLES)))
    if isinstance(regime, COMPLEX_ONLY) and observable in REAL_OBSERVABLES:
        raise InputError("regime %s has no real eigenvalues; %s is not available" % (regime_label(regime), observable))


def evaluate_grid(regime, observable, axes):
    check_compatible(regime, observable)
    rows = []
    if len(axes) == 1:
        for x in axes[0]:
            rows.append((float(x), float(evaluate(regime, observable, (float(x),)))))
    else:
        for x in axes[0]:
            for y in axes[1]:
                rows.append((float(x), float(y), float(evaluate(regime, observable, (float(x), float(y))))))
    return rows


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in row])


def write_sidecar(path, info):
    with open(path + ".json", "w") as fh:
        json.dump(info, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_gnuplot(path, dims, title):
    script = os.path.splitext(path)[0] + ".gp"
    data = os.path.basename(path)
    lines = [
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set title '%s'" % title,
    ]
    if dims == 1:
        lines.append("plot '%s' using 1:2 with lines" % data)
    else:
        lines += ["set pm3d map", "set dgrid3d", "splot '%s' using 1:2:3 with pm3d" % data]
    with open(script, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return script


# -- settings: config file < preset < flags --------------------------------------


KEYS = ("regime", "M", "u_re", "u_im", "grid", "observable", "out", "seed", "samples")


def read_config(path):
    """Top-level key = value pairs plus [name] sections defining presets."""
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        with open(path) as fh:
            parser.read_string("[__top__]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise InputError("cannot read config %s: %s" % (path, str(exc).splitlines()[0])) from None
    top = dict(parser["__top__"])
    presets = {name: dict(parser[name]) for name in parser.sections() if name != "__top__"}
    for section in [top] + list(presets.values()):
        for k in section:
            if k not in KEYS:
                raise InputError("unknown config key %r" % k)
    return top, presets


def settings(args):
    merged = {}
    user_presets = {}
    if getattr(args, "config", None):
        top, user_presets = read_config(args.config)
        merged.update(top)
    preset = getattr(args, "preset", None)
    if preset:
        table = dict(PRESETS)
        table.update(user_presets)
        if preset not in table:
            raise InputError("unknown preset %r (choose from %s)" % (preset, ", ".join(sorted(table))))
        merged.update(table[preset])
    for k in KEYS:
        v = getattr(args, k, None)
        if v is not None:
            merged[k] = v
    return merged


def regime_from(s):
    if "regime" not in s:
        raise InputError("--regime is required")
    u = None
    if "u_re" in s or "u_im" in s:
        u = complex(float(s.get("u_re", 0.0)), float(s.get("u_im", 0.0)))
    M = s.get("M")
    try:
        return make_regime(s["regime"], M=None if M is None else int(M), u=u)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from None


# -- subcommands ---------------------------------------------------------------


def cmd_eval(args):
    s = settings(args)
    start = time.monotonic()
    regime = regime_from(s)
    for key in ("grid", "observable", "out"):
        if key not in s:
            raise InputError("--%s is required" % key)
    axes = parse_grid(s["grid"])
    rows = evaluate_grid(regime, s["observable"], axes)
    header = ["x", "value"] if len(axes) == 1 else ["x", "y", "value"]
    write_csv(s["out"], header, rows)
    info = {
        "command": "eval",
        "regime": regime_label(regime),
        "M": getattr(regime, "M", None),
        "u": None if "u_re" not in s and "u_im" not in s else [float(s.get("u_re", 0)), float(s.get("u_im", 0))],
        "observable": s["observable"],
        "grid": s["grid"],
        "rows": len(rows),
        "tolerances": {"imaginary_residue_rtol": 1e-6, "real_point_tol": 1e-12},
        "version": __version__,
        "wall_time_s": time.monotonic() - start,
    }
    write_sidecar(s["out"], info)
    if args.gnuplot:
        write_gnuplot(s["out"], len(axes), "%s %s" % (regime_label(regime), s["observable"]))
    return EXIT_OK


def cmd_validate(args):
    s = settings(args)
    seed = int(s.get("seed", 42))
    samples = int(s.get("samples", 10000))
    out = s.get("out", "validation_report.json")
    start = time.monotonic()
    try:
        records = run_suite(args.suite, seed=seed, samples=samples, time_limit=args.time_limit)
    except BudgetExhausted as exc:
        print("budget exhausted: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        raise InputError(str(exc)) from None
    ok = all(r["pass"] for r in records)
    report = {
        "suite": args.suite,
        "seed": seed,
        "samples": samples,
        "checks": records,
        "pass": ok,
        "version": __version__,
        "wall_time_s": time.monotonic() - start,
    }
    with open(out, "w") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    for r in records:
        print("%s  %s: measured %.6g, target %.6g, tol %.3g" % (
            "PASS" if r["pass"] else "FAIL", r["check"], r["measured"], r["target"], r["tolerance"]))
    return EXIT_OK if ok else EXIT_FAIL


def _parse_m_list(text):
    try:
        ms = [int(v) for v in str(text).split(",")]
    except ValueError:
        raise InputError("--M must be a comma separated list of integers") from None
    if any(b <= a for a, b in zip(ms, ms[1:])):
        raise InputError("--M list must be strictly ascending")
    if ms[0] < 1 or ms[-1] > 512:
        raise InputError("M values must lie in 1..512")
    return ms


def cmd_converge(args):
    s = settings(args)
    start = time.monotonic()
    if "M" not in s:
        raise InputError("--M is required (comma separated list)")
    ms = _parse_m_list(s["M"])
    name = s.get("regime")
    if name in (None, "finite", "ginue-finite"):
        raise InputError("--regime must be a limit regime")
    u = complex(float(s.get("u_re", 0.0)), float(s.get("u_im", 0.0)))
    try:
        if name in ("real-edge", "complex-edge", "ginue-edge"):
            regime = make_regime(name, u=u)
            u = None
        else:
            regime = make_regime(name)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    axes = parse_grid(s.get("grid", "-2:2:9"))
    if len(axes) != 1:
        raise InputError("converge takes a 1-d grid; pairs are neighbouring nodes")
    nodes = list(axes[0])
    pairs = [(nodes[k], nodes[(k + 1) % len(nodes)]) for k in range(len(nodes))]
    if u is not None and u.imag == 0:
        u = u.real
    try:
        rows = []
        for M in ms:
            lg = log10_distance(regime, M, pairs, u)
            rows.append((M, 0.0 if lg == -math.inf else 10.0 ** lg, lg))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    write_csv(s.get("out", "converge.csv"), ["M", "distance", "log10_distance"], rows)
    decreasing = all(b[2] < a[2] for a, b in zip(rows, rows[1:]))
    write_sidecar(s.get("out", "converge.csv"), {
        "command": "converge",
        "regime": regime_label(regime),
        "u": None if u is None else [complex(u).real, complex(u).imag],
        "M": ms,
        "grid": s.get("grid", "-2:2:9"),
        "monotone_decreasing": decreasing,
        "version": __version__,
        "wall_time_s": time.monotonic() - start,
    })
    print("monotone decreasing: %s" % decreasing)
    return EXIT_OK


def cmd_sample(args):
    s = settings(args)
    start = time.monotonic()
    regime = regime_from(s)
    if not isinstance(regime, (FiniteN, ComplexGinibreFinite)):
        raise InputError("sample needs --regime finite or ginue-finite")
    n = 2 * regime.M if isinstance(regime, FiniteN) else regime.N
    count = int(s.get("samples", 10000))
    seed = int(s.get("seed", 42))
    observable = s.get("observable", "R_10")
    axes = s.get("grid")
    if axes is None:
        raise InputError("--grid is required (lo:hi:bins for R_10, two axes for R_01)")
    parts = [p.split(":") for p in axes.split(",")]
    try:
        windows = [(float(p[0]), float(p[1])) for p in parts]
        bins = [int(p[2]) for p in parts]
    except (ValueError, IndexError):
        raise InputError("grid axes must look like lo:hi:bins") from None
    if isinstance(regime, FiniteN):
        samples = list(sample_ginoe(n, count, seed))
    else:
        samples = list(sample_ginue(n, count, seed))
    if observable == "R_10":
        if isinstance(regime, ComplexGinibreFinite) or len(windows) != 1:
            raise InputError("R_10 histograms need a real matrix and a 1-d window")
        hist = accumulate_density(samples, windows[0], bins[0], "real")
    elif observable == "R_01":
        if len(windows) != 2:
            raise InputError("R_01 histograms need a 2-d window")
        kind = "upper" if isinstance(regime, FiniteN) else "complex"
        hist = accumulate_density(samples, windows, tuple(bins), kind)
    else:
        raise InputError("sample supports R_10 and R_01")
    out = s.get("out", "histogram.csv")
    hist.to_csv(out)
    info = {
        "command": "sample",
        "regime": regime_label(regime),
        "n": n,
        "samples": count,
        "seed": seed,
        "observable": observable,
        "grid": axes,
        "version": __version__,
        "wall_time_s": time.monotonic() - start,
    }
    if isinstance(regime, FiniteN):
        mean, se, _ = real_count_stats(samples)
        info["mean_real_count"] = mean
        info["mean_real_count_stderr"] = se
    write_sidecar(out, info)
    return EXIT_OK


def cmd_figures(args):
    s = settings(args)
    outdir = s.get("out", "figures")
    os.makedirs(outdir, exist_ok=True)
    names = [args.preset] if args.preset else sorted(PRESETS)
    for name in names:
        spec = dict(PRESETS.get(name, {}))
        if not spec:
            raise InputError("unknown preset %r" % name)
        start = time.monotonic()
        regime = regime_from(spec)
        axes = parse_grid(spec["grid"])
        rows = evaluate_grid(regime, spec["observable"], axes)
        path = os.path.join(outdir, name.replace(":", "") + ".csv")
        write_csv(path, ["x", "value"] if len(axes) == 1 else ["x", "y", "value"], rows)
        write_sidecar(path, {
            "command": "figures",
            "preset": name,
            "regime": regime_label(regime),
            "observable": spec["observable"],
            "grid": spec["grid"],
            "rows": len(rows),
            "version": __version__,
            "wall_time_s": time.monotonic() - start,
        })
        if args.gnuplot:
            write_gnuplot(path, len(axes), "%s %s" % (name, spec["observable"]))
        print("%s -> %s (%d rows)" % (name, path, len(rows)))
    return EXIT_OK


def build_parser():
    p = _Parser(prog="ginibre", description="Correlation functions of real Ginibre matrices.",
                formatter_class=argparse.RawDescriptionHelpFormatter, epilog=OBSERVABLE_DOC)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--config")
        sp.add_argument("--preset")
        sp.add_argument("--regime")
        sp.add_argument("--M")
        sp.add_argument("--u-re", dest="u_re")
        sp.add_argument("--u-im", dest="u_im")
        sp.add_argument("--grid")
        sp.add_argument("--observable")
        sp.add_argument("--out")
        sp.add_argument("--seed")
        sp.add_argument("--samples")
        sp.add_argument("--gnuplot", action="store_true", help="also write a gnuplot script")

    for name, fn, helptext in (
        ("eval", cmd_eval, "evaluate an observable on a grid"),
        ("converge", cmd_converge, "finite-to-limit distances over a list of M"),
        ("sample", cmd_sample, "Monte Carlo histogram"),
        ("figures", cmd_figures, "write the data of every figure preset"),
    ):
        sp = sub.add_parser(name, help=helptext, formatter_class=argparse.RawDescriptionHelpFormatter,
                            epilog=OBSERVABLE_DOC)
        common(sp)
        sp.set_defaults(func=fn)
    sp = sub.add_parser("validate", help="run a validation suite")
    common(sp)
    sp.add_argument("--suite", default="all", choices=["pfaffian", "oracle", "montecarlo", "limits", "all"])
    sp.add_argument("--time-limit", type=float, default=None, help="seconds before giving up (exit 3)")
    sp.set_defaults(func=cmd_validate)
    return p


VALUE_FLAGS = ("--grid", "--u-re", "--u-im", "--M")


def _glue_values(argv):
    # "--grid -1:1:5" would otherwise be read as two options
    out = []
    it = iter(argv)
    for a in it:
        if a in VALUE_FLAGS:
            v = next(it, None)
            out.append(a if v is None else "%s=%s" % (a, v))
        else:
            out.append(a)
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_values(argv))
        if not getattr(args, "command", None):
            raise InputError("missing subcommand (eval, validate, converge, sample, figures)")
        return args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, TypeError, OverflowError) as exc:
        print("error: %s" % str(exc).splitlines()[0] if str(exc) else "error: %s" % type(exc).__name__, file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
