"""crystallize: command-line front end.

Runs Monte Carlo ensembles, tabulates the analytic curves, exports CSV and
renders static SVG plots.  CSV is the primary data interface; every SVG is
rendered from CSV files that were written first, never from internal state.
Each command writes a manifest JSON echoing the fully resolved
configuration, and rerunning a command with the same configuration and seed
reproduces byte-identical CSV output for any --threads value.

Exit codes: 0 success, 2 usage/configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__, analytic, asymptotics, ensemble, poly, roots, svgplot

COMMANDS = (
    "sample",
    "roots",
    "fraction",
    "paircorr",
    "spacing",
    "vp-table",
    "demo-triple-zero",
    "figure",
)

MODES = ("empirical", "analytic", "asymptotic", "all")
METHODS = ("sampled", "companion", "both")

_RANGES = {
    "N": (1, 4096),
    "p": (0, 500),
    "realizations": (1, 10**7),
}

DEFAULTS = dict(
    N=30,
    p=0,
    realizations=200,
    seed=20260809,
    bins=0.05,
    max_range=6.0,
    mode="analytic",
    x_max=6.0,
    p_max=10,
    which=1,
    a=0.92,
    method="sampled",
    oversample=16,
    index=0,
    threads=None,  # filled from CRYSTALLIZE_THREADS, else 1
    out="crystallize-out",
    input=None,
    find_threshold=False,
)


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved configuration of one CLI invocation."""

    command: str
    N: int
    p: int
    realizations: int
    seed: int
    bins: float
    max_range: float
    mode: str
    x_max: float
    p_max: int
    which: int
    a: float
    method: str
    oversample: int
    index: int
    threads: int
    out: str
    input: str | None
    find_threshold: bool


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crystallize",
        description="Zero statistics of random trigonometric polynomials and "
        "their derivatives: ensembles, analytic curves, CSV and SVG output.",
    )
    parser.add_argument("--version", action="version", version=f"crystallize {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, *names):
        if "N" in names:
            sp.add_argument("--N", type=int, default=None, help="polynomial degree")
        if "p" in names:
            sp.add_argument("--p", type=int, default=None, help="derivative order")
        if "realizations" in names:
            sp.add_argument("--realizations", type=int, default=None,
                            help="Monte Carlo ensemble size")
        if "seed" in names:
            sp.add_argument("--seed", type=int, default=None, help="master seed")
        if "threads" in names:
            sp.add_argument("--threads", type=int, default=None,
                            help="worker processes (default $CRYSTALLIZE_THREADS or 1)")
        sp.add_argument("--config", type=str, default=None,
                        help="JSON config file; explicit flags take precedence")
        sp.add_argument("--out", type=str, default=None, help="output directory")

    sp = sub.add_parser("sample", help="draw one realization and write a JSON fixture")
    add_common(sp, "N", "p", "realizations", "seed")
    sp.add_argument("--index", type=int, default=None, help="realization index")

    sp = sub.add_parser("roots", help="real/complex zeros of one realization")
    add_common(sp, "N", "p", "realizations", "seed")
    sp.add_argument("--index", type=int, default=None)
    sp.add_argument("--method", choices=METHODS, default=None)
    sp.add_argument("--oversample", type=int, default=None)
    sp.add_argument("--input", type=str, default=None,
                    help="polynomial fixture JSON instead of sampling")

    sp = sub.add_parser("fraction", help="real-zero fraction (empirical/analytic/asymptotic)")
    add_common(sp, "N", "p", "realizations", "seed", "threads")
    sp.add_argument("--mode", choices=MODES, default=None)
    sp.add_argument("--oversample", type=int, default=None)

    sp = sub.add_parser("paircorr", help="pair correlation of real zeros")
    add_common(sp, "N", "p", "realizations", "seed", "threads")
    sp.add_argument("--mode", choices=MODES, default=None)
    sp.add_argument("--bins", type=float, default=None, help="bin width (rescaled units)")
    sp.add_argument("--max-range", dest="max_range", type=float, default=None)
    sp.add_argument("--x-max", dest="x_max", type=float, default=None,
                    help="upper end of the analytic curve grid")
    sp.add_argument("--oversample", type=int, default=None)

    sp = sub.add_parser("spacing", help="nearest-neighbor spacing distribution")
    add_common(sp, "N", "p", "realizations", "seed", "threads")
    sp.add_argument("--bins", type=float, default=None, help="bin width (rescaled units)")
    sp.add_argument("--max-range", dest="max_range", type=float, default=None)
    sp.add_argument("--oversample", type=int, default=None)

    sp = sub.add_parser("vp-table", help="table of real-zero fractions per derivative order")
    add_common(sp, "N")
    sp.add_argument("--p-max", dest="p_max", type=int, default=None)

    sp = sub.add_parser("demo-triple-zero", help="close pairs from newly real zeros")
    add_common(sp)
    sp.add_argument("--a", type=float, default=None,
                    help="imaginary part of the bridged zero pair")
    sp.add_argument("--find-threshold", dest="find_threshold", action="store_true",
                    default=None, help="bisect the 3 -> 1 transition in a")

    sp = sub.add_parser("figure", help="reproduce the standard figures (CSV + SVG)")
    add_common(sp, "N", "p", "seed")
    sp.add_argument("--which", type=int, default=None, choices=(1, 2, 3))
    sp.add_argument("--x-max", dest="x_max", type=float, default=None)

    return parser


def _load_config_file(path: str, parser: argparse.ArgumentParser) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        parser.error(f"cannot read --config file: {exc}")
    except json.JSONDecodeError as exc:
        parser.error(f"--config file is not valid JSON: {exc}")
    if not isinstance(data, dict):
        parser.error("--config file must hold a JSON object")
    unknown = sorted(set(data) - set(DEFAULTS))
    if unknown:
        parser.error(f"unknown config keys: {', '.join(unknown)}")
    return data


def parse_config(argv=None) -> RunConfig:
    """Parse argv (and optional config file) into a fully resolved RunConfig.

    Precedence: built-in defaults < config file < explicit flags.
    """
    parser = build_parser()
    args = vars(parser.parse_args(argv))
    command = args.pop("command")
    config_path = args.pop("config", None)

    merged = dict(DEFAULTS)
    if config_path:
        merged.update(_load_config_file(config_path, parser))
    for key, val in args.items():
        if val is not None:
            merged[key] = val
    if merged["threads"] is None:
        merged["threads"] = int(os.environ.get("CRYSTALLIZE_THREADS", "1"))

    for key, (lo, hi) in _RANGES.items():
        v = merged[key]
        if not lo <= v <= hi:
            parser.error(f"{key} must be in [{lo}, {hi}], got {v}")
    if merged["bins"] <= 0:
        parser.error(f"bins must be positive, got {merged['bins']}")
    if merged["max_range"] <= merged["bins"]:
        parser.error("max_range must exceed the bin width bins")
    if merged["x_max"] <= 0:
        parser.error(f"x_max must be positive, got {merged['x_max']}")
    if merged["p_max"] < 0 or merged["p_max"] > 500:
        parser.error(f"p_max must be in [0, 500], got {merged['p_max']}")
    if merged["a"] <= 0:
        parser.error(f"a must be positive, got {merged['a']}")
    if merged["oversample"] < 4:
        parser.error(f"oversample must be at least 4, got {merged['oversample']}")
    if merged["threads"] < 1:
        parser.error(f"threads must be at least 1, got {merged['threads']}")
    if merged["index"] < 0 or merged["index"] >= merged["realizations"]:
        parser.error(f"index must be in [0, realizations), got {merged['index']}")
    if command in ("paircorr", "spacing") and merged["max_range"] > merged["N"]:
        parser.error(
            f"max_range must not exceed the half period N={merged['N']}, "
            f"got {merged['max_range']}"
        )
    if merged["find_threshold"] is None:
        merged["find_threshold"] = False

    return RunConfig(command=command, **merged)


class _Outputs:
    """Tracks files written by one run so failures can clean up partials."""

    def __init__(self, directory):
        self.directory = directory
        self.paths: list[str] = []

    def path(self, name: str) -> str:
        p = os.path.join(self.directory, name)
        self.paths.append(p)
        return p

    def write_text(self, name: str, text: str) -> str:
        p = self.path(name)
        with open(p, "w", encoding="utf-8") as fh:
            fh.write(text)
        return p

    def discard_all(self):
        for p in self.paths:
            try:
                os.unlink(p)
            except OSError:
                pass


def _write_manifest(out: _Outputs, cfg: RunConfig):
    doc = {
        "tool": "crystallize",
        "version": __version__,
        "command": cfg.command,
        "config": asdict(cfg),
    }
    name = cfg.command.replace("-", "_") + "_manifest.json"
    out.write_text(name, json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _curve_csv(header: str, cols) -> str:
    lines = [header]
    for row in zip(*cols):
        lines.append(",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def _read_csv(path: str) -> dict[str, list[float]]:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        cols = {h: [] for h in header}
        for line in fh:
            for h, v in zip(header, line.strip().split(",")):
                cols[h].append(float(v))
    return cols


def _analytic_grid(x_max: float, step: float = 0.02) -> np.ndarray:
    ks = np.arange(1, int(round(x_max / step)) + 1)
    return np.round(ks * step, 10)


def _spec(cfg: RunConfig) -> poly.EnsembleSpec:
    return poly.EnsembleSpec.equal_variance(
        cfg.N, cfg.p, cfg.realizations, cfg.seed
    )


def _fixture_polynomial(cfg: RunConfig) -> poly.TrigPolynomial:
    if cfg.input:
        with open(cfg.input, "r", encoding="utf-8") as fh:
            return poly.TrigPolynomial.from_json(json.load(fh))
    f = poly.sample(_spec(cfg), cfg.index)
    if cfg.p > 0:
        # scaled by N^-p; the zero set is unchanged and stays in float range
        f = poly.derivative_rescaled(f, cfg.p)
    return f


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_sample(cfg: RunConfig, out: _Outputs):
    f = _fixture_polynomial(cfg)
    out.write_text("sample.json", json.dumps(f.to_json(), indent=2) + "\n")
    print(f"wrote realization {cfg.index} (N={cfg.N}, p={cfg.p}) to sample.json")


def _cmd_roots(cfg: RunConfig, out: _Outputs):
    f = _fixture_polynomial(cfg)
    sets = {}
    if cfg.method in ("sampled", "both"):
        sets["sampled"] = roots.real_roots_sampled(f, oversample=cfg.oversample)
    if cfg.method in ("companion", "both"):
        sets["companion"] = roots.all_roots_companion(f)
    primary = sets.get("companion", sets.get("sampled"))
    out.write_text("roots.csv", primary.real_roots_csv())
    out.write_text("roots.json", json.dumps(primary.to_json(), indent=2) + "\n")
    if cfg.method == "both":
        a, b = sets["sampled"], sets["companion"]
        diff = np.nan
        if a.real_count == b.real_count and a.real_count:
            diff = float(np.max(np.abs(a.real_roots - b.real_roots)))
        print(
            f"sampled {a.real_count} real roots, companion {b.real_count}; "
            f"max position difference {diff:.3e}"
        )
    else:
        print(f"{primary.method}: {primary.real_count} real roots "
              f"of 2N = {2 * f.degree}")


def _cmd_fraction(cfg: RunConfig, out: _Outputs):
    rows = []
    if cfg.mode in ("analytic", "all"):
        rows.append(("analytic", analytic.expected_real_fraction(cfg.N, cfg.p), ""))
    if cfg.mode in ("asymptotic", "all"):
        rows.append(("asymptotic", analytic.v_p(cfg.p), ""))
    if cfg.mode in ("empirical", "all"):
        mean, err = ensemble.empirical_real_fraction(
            _spec(cfg), oversample=cfg.oversample, threads=cfg.threads
        )
        rows.append(("empirical", mean, repr(err)))
    lines = ["mode,value,stderr"]
    for mode, value, err in rows:
        lines.append(f"{mode},{value!r},{err}")
        print(f"fraction[{mode}] N={cfg.N} p={cfg.p}: {value:.6f}"
              + (f" +- {float(err):.6f}" if err else ""))
    out.write_text("fraction.csv", "\n".join(lines) + "\n")


def _cmd_paircorr(cfg: RunConfig, out: _Outputs):
    made_csv = []
    if cfg.mode in ("empirical", "all"):
        spec = _spec(cfg)
        rootsets = ensemble.real_zero_ensemble(
            spec, oversample=cfg.oversample, threads=cfg.threads
        )
        est = ensemble.empirical_pair_correlation(
            rootsets, cfg.N, bin_width=cfg.bins, max_range=cfg.max_range,
            metadata=spec.summary(),
        )
        p1 = out.write_text("paircorr_empirical.csv", est.histogram.to_csv())
        out.write_text("paircorr_empirical_meta.json", est.sidecar_json() + "\n")
        made_csv.append(("empirical", p1))
    if cfg.mode in ("analytic", "all"):
        xs = _analytic_grid(cfg.x_max)
        r2 = analytic.pair_correlation_limit_curve(cfg.p, xs)
        p2 = out.write_text("paircorr_analytic.csv", _curve_csv("x,R2", (xs, r2)))
        made_csv.append(("analytic", p2))
    if cfg.mode in ("asymptotic", "all"):
        if cfg.p < 1:
            raise ValueError("asymptotic pair-correlation profile needs p >= 1")
        us = np.linspace(-3.0, 3.0, 121)
        xs = 1.0 + 1.0 / (2.0 * cfg.p) + us / cfg.p
        r2 = np.array([asymptotics.theorem_profile(1, cfg.p, u) for u in us])
        p3 = out.write_text("paircorr_theorem.csv", _curve_csv("x,R2", (xs, r2)))
        made_csv.append(("asymptotic", p3))
    print(f"paircorr mode={cfg.mode}: wrote {len(made_csv)} CSV file(s)")
    if cfg.mode == "all":
        series = []
        for label, path in made_csv:
            cols = _read_csv(path)
            if "bin_left" in cols:
                xs_h, ys_h = svgplot.hist_xy(
                    cols["bin_left"] + [cols["bin_right"][-1]], cols["value"]
                )
                series.append(svgplot.Series(xs_h, ys_h, label=label, kind="hist"))
            else:
                series.append(
                    svgplot.Series(cols["x"], cols["R2"], label=label,
                                   dashed=(label == "asymptotic"))
                )
        svgplot.render(
            out.path("paircorr.svg"), series,
            title=f"pair correlation, N={cfg.N}, p={cfg.p}",
            xlabel="separation (mean total spacing = 1)", ylabel="R2",
        )


def _cmd_spacing(cfg: RunConfig, out: _Outputs):
    spec = _spec(cfg)
    rootsets = ensemble.real_zero_ensemble(
        spec, oversample=cfg.oversample, threads=cfg.threads
    )
    hist = ensemble.nearest_neighbor_spacings(
        rootsets, cfg.N, bin_width=cfg.bins, max_range=cfg.max_range
    )
    p1 = out.write_text("spacing.csv", hist.to_csv())
    mean_gap = float(np.mean(ensemble.gap_ensemble(rootsets, cfg.N)))
    print(f"spacing: {len(hist.values)} bins, ensemble mean gap {mean_gap:.6f}")
    paths = [("empirical", p1)]
    if cfg.p >= 1:
        ss = np.round(np.arange(1, int(round(cfg.max_range / 0.01)) + 1) * 0.01, 10)
        us = cfg.p * (ss - 1.0 - 1.0 / (2.0 * cfg.p))
        dens = cfg.p * asymptotics.nn_density(us)
        p2 = out.write_text("spacing_model.csv", _curve_csv("s,density", (ss, dens)))
        paths.append(("model", p2))
    series = []
    for label, path in paths:
        cols = _read_csv(path)
        if "bin_left" in cols:
            xs_h, ys_h = svgplot.hist_xy(
                cols["bin_left"] + [cols["bin_right"][-1]], cols["value"]
            )
            series.append(svgplot.Series(xs_h, ys_h, label=label, kind="hist"))
        else:
            series.append(svgplot.Series(cols["s"], cols["density"],
                                         label=label, dashed=True))
    svgplot.render(
        out.path("spacing.svg"), series,
        title=f"nearest-neighbor spacing, N={cfg.N}, p={cfg.p}",
        xlabel="gap (mean total spacing = 1)", ylabel="density",
    )


def _cmd_vp_table(cfg: RunConfig, out: _Outputs):
    lines = ["p,v_p,finite_N_fraction,new_real_fraction"]
    for p in range(cfg.p_max + 1):
        vp = analytic.v_p(p)
        finite = analytic.expected_real_fraction(cfg.N, p)
        new_txt = repr(asymptotics.new_real_fraction(p)) if p >= 1 else ""
        lines.append(f"{p},{vp!r},{finite!r},{new_txt}")
    text = "\n".join(lines) + "\n"
    out.write_text("vp_table.csv", text)
    sys.stdout.write(text)


def _cmd_demo_triple_zero(cfg: RunConfig, out: _Outputs):
    demo = asymptotics.triple_zero_demo(cfg.a)
    path = out.write_text("triple_zero.csv", demo.to_csv())
    print(f"a = {cfg.a}: derivative has {demo.derivative_zero_count} real zero(s) in (0, 1)")
    if cfg.find_threshold:
        thr = asymptotics.triple_zero_threshold()
        print(f"3 -> 1 transition at a = {thr:.6f}")
        out.write_text("triple_zero_threshold.txt", f"{thr!r}\n")
    cols = _read_csv(path)
    svgplot.render(
        out.path("triple_zero.svg"),
        [
            svgplot.Series(cols["x"], cols["f"], label="f"),
            svgplot.Series(cols["x"], cols["fprime"], label="f'", dashed=True),
        ],
        title=f"bridged-gap function, a = {cfg.a}",
        xlabel="x", ylabel="value",
    )


def _figure1(cfg: RunConfig, out: _Outputs):
    spec = poly.EnsembleSpec.equal_variance(cfg.N, 0, 1, cfg.seed)
    f = poly.sample(spec, 0)
    xs = np.linspace(0.0, 2.0 * cfg.N, 1201)
    panels = [("F", 0), ("d1", 1), ("d3", 3), ("d10", 10)]
    for name, order in panels:
        g = poly.derivative_rescaled(f, order) if order else f
        vals = poly.evaluate_rescaled(g, xs)
        vals = vals / np.max(np.abs(vals))
        path = out.write_text(f"figure1_{name}.csv", _curve_csv("x,value", (xs, vals)))
        cols = _read_csv(path)
        svgplot.render(
            out.path(f"figure1_{name}.svg"),
            [svgplot.Series(cols["x"], cols["value"], label=name)],
            title=f"degree-{cfg.N} realization, panel {name} (normalized)",
            xlabel="x (rescaled)", ylabel="value",
        )


def _figure2(cfg: RunConfig, out: _Outputs):
    for p in (0, 1, 3, 10):
        xs = _analytic_grid(cfg.x_max)
        r2 = analytic.pair_correlation_limit_curve(p, xs)
        path = out.write_text(f"figure2_p{p}.csv", _curve_csv("x,R2", (xs, r2)))
        cols = _read_csv(path)
        svgplot.render(
            out.path(f"figure2_p{p}.svg"),
            [svgplot.Series(cols["x"], cols["R2"], label=f"p={p}")],
            title=f"pair correlation of real zeros, p={p}",
            xlabel="separation", ylabel="R2",
        )


def _figure3(cfg: RunConfig, out: _Outputs):
    for a in (0.92, 1.1):
        demo = asymptotics.triple_zero_demo(a)
        tag = f"a{a:g}".replace(".", "_")
        path = out.write_text(f"figure3_{tag}.csv", demo.to_csv())
        cols = _read_csv(path)
        svgplot.render(
            out.path(f"figure3_{tag}.svg"),
            [
                svgplot.Series(cols["x"], cols["f"], label="f"),
                svgplot.Series(cols["x"], cols["fprime"], label="f'", dashed=True),
            ],
            title=f"bridged-gap function, a = {a:g}",
            xlabel="x", ylabel="value",
        )


def _cmd_figure(cfg: RunConfig, out: _Outputs):
    if cfg.which == 1:
        _figure1(cfg, out)
    elif cfg.which == 2:
        _figure2(cfg, out)
    else:
        _figure3(cfg, out)
    print(f"figure {cfg.which}: wrote {len(out.paths)} file(s)")


_DISPATCH = {
    "sample": _cmd_sample,
    "roots": _cmd_roots,
    "fraction": _cmd_fraction,
    "paircorr": _cmd_paircorr,
    "spacing": _cmd_spacing,
    "vp-table": _cmd_vp_table,
    "demo-triple-zero": _cmd_demo_triple_zero,
    "figure": _cmd_figure,
}


def run(cfg: RunConfig) -> int:
    """Execute a resolved configuration; returns a process exit code."""
    try:
        os.makedirs(cfg.out, exist_ok=True)
    except OSError as exc:
        print(f"cannot create output directory {cfg.out!r}: {exc}", file=sys.stderr)
        return 2
    if not os.access(cfg.out, os.W_OK):
        print(f"output directory {cfg.out!r} is not writable", file=sys.stderr)
        return 2
    out = _Outputs(cfg.out)
    try:
        _DISPATCH[cfg.command](cfg, out)
        _write_manifest(out, cfg)
    except (ValueError, RuntimeError, OverflowError, FloatingPointError) as exc:
        out.discard_all()
        print(
            f"numerical failure in {cfg.command} "
            f"(N={cfg.N}, p={cfg.p}, seed={cfg.seed}): {exc}",
            file=sys.stderr,
        )
        return 3
    return 0


def main(argv=None) -> int:
    cfg = parse_config(argv)
    return run(cfg)


def console_main():  # pragma: no cover - thin wrapper
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
