"""Command-line interface.

    rmt-eq <subcommand> [--config path] [--set key=value ...] [--out dir]

Subcommands: sample, spectral-stats, evolve, ensemble, verify, plot.
Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numeric failure, 4 I/O error.  Every run writes a manifest echoing the
fully resolved configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import dephasing as dph
from . import gue
from .config import parse_config
from .ensemble import (ExperimentConfig, gap_histogram, mc_gap_moment, run_ensemble,
                       sample_spectra)
from .analytics import predicted_gap_dispersion
from .errors import ConfigError, InvalidArgumentError, NumericFailureError
from .fitting import bootstrap_fit, fit_shifted_exponential
from .output import (fmt, write_histogram_csv, write_manifest, write_records_csv,
                     write_summary_json, write_trace_csv, write_text)
from .rng import RngStream, derive_sample_seed
from .svg import render_svg_chart
from .verify import run_verification

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rmt-eq",
                                     description="GUE equilibration experiments")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in [
        ("sample", "emit one sampled spectrum as CSV"),
        ("spectral-stats", "gap histograms and Monte Carlo moments vs closed forms"),
        ("evolve", "one dephasing trace g(t) as CSV and SVG"),
        ("ensemble", "full crossing-time experiment: records, summary, chart"),
        ("verify", "run the quadrature and identity self-checks"),
        ("plot", "render a CSV produced by this tool to SVG"),
    ]:
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", type=Path, default=None, help="TOML configuration file")
        p.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="KEY=VALUE", help="override a configuration key")
        p.add_argument("--out", type=Path, default=Path("out"), help="output directory")
        if name == "plot":
            p.add_argument("--input", type=Path, required=True, help="CSV file to render")
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = parse_config(args.config, args.overrides)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return _dispatch(args, cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericFailureError, InvalidArgumentError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    raise SystemExit(main())


def _dispatch(args, cfg: ExperimentConfig) -> int:
    out: Path = args.out
    command = args.command
    if command == "sample":
        return _cmd_sample(cfg, out)
    if command == "spectral-stats":
        return _cmd_spectral_stats(cfg, out)
    if command == "evolve":
        return _cmd_evolve(cfg, out)
    if command == "ensemble":
        return _cmd_ensemble(cfg, out)
    if command == "verify":
        return _cmd_verify(cfg, out)
    if command == "plot":
        return _cmd_plot(cfg, out, args.input)
    raise ConfigError(f"unknown command {command!r}")


def _first_size(cfg: ExperimentConfig):
    size = cfg.sizes[0]
    n = 2 ** size
    return size, n, cfg.sigma_for(n)


def _cmd_sample(cfg, out) -> int:
    size, n, sigma = _first_size(cfg)
    stream = RngStream(derive_sample_seed(cfg.master_seed, 0))
    spec = gue.eigendecompose(gue.sample_gue(n, sigma, stream))
    lines = ["k,energy"] + [f"{k},{fmt(e)}" for k, e in enumerate(spec.energies)]
    path = out / "spectrum.csv"
    write_text(path, "\n".join(lines) + "\n")
    write_manifest("sample", cfg, [path], out / "manifest.json")
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_spectral_stats(cfg, out) -> int:
    outputs = []
    series = []
    stats = []
    for pos, size in enumerate(cfg.sizes):
        n = 2 ** size
        sigma = cfg.sigma_for(n)
        spectra = sample_spectra(n, sigma, cfg.samples_per_size,
                                 master_seed=cfg.master_seed + pos)
        top = 4.0 * sigma * np.sqrt(n) + 0.5
        hist = gap_histogram(spectra, bins=80, hist_range=(0.0, top))
        path = out / f"gap_histogram_N{n}.csv"
        write_histogram_csv(hist, path)
        outputs.append(path)
        series.append((f"N={n}", [((lo, hi), d) for lo, hi, d in
                                  zip(hist.edges[:-1], hist.edges[1:], hist.densities)]))
        mean, se = mc_gap_moment(n, sigma, cfg.samples_per_size, 2, cfg.master_seed + pos)
        stats.append({"N": n, "sigma": sigma, "mc_mean": mean, "mc_se": se,
                      "predicted": predicted_gap_dispersion(n, sigma)})
    stats_path = out / "spectral_stats.json"
    write_text(stats_path, json.dumps(stats, indent=2) + "\n")
    outputs.append(stats_path)
    svg_path = out / "gap_histogram.svg"
    render_svg_chart(series, "histogram", svg_path, title="All-pairs gap density",
                     x_label="|E_i - E_j|", y_label="density")
    outputs.append(svg_path)
    write_manifest("spectral-stats", cfg, outputs, out / "manifest.json")
    print(f"wrote {len(outputs)} files under {out}")
    return EXIT_OK


def _cmd_evolve(cfg, out) -> int:
    size, n, sigma = _first_size(cfg)
    stream = RngStream(derive_sample_seed(cfg.master_seed, 0))
    spec = gue.eigendecompose(gue.sample_gue(n, sigma, stream))
    state = dph.initial_state(cfg.state_kind, spec, stream)
    data = dph.dephasing_data(spec, dph.bulk_magnetisation(size), state)
    times = cfg.grid.times(n, sigma)
    trace = dph.time_signal(data, times)
    csv_path = out / "trace.csv"
    write_trace_csv(trace, csv_path)
    svg_path = out / "trace.svg"
    threshold = [(float(times[0]), data.g2_inf), (float(times[-1]), data.g2_inf)]
    render_svg_chart(
        [("|g(t)|^2", list(zip(trace.times, trace.sq_values))),
         ("infinite-time average", threshold)],
        "line", svg_path, title=f"Dephasing trace, N={n}",
        x_label="t", y_label="|g(t)|^2")
    write_manifest("evolve", cfg, [csv_path, svg_path], out / "manifest.json")
    print(f"wrote {csv_path} and {svg_path}")
    return EXIT_OK


def _cmd_ensemble(cfg, out) -> int:
    records, summary = run_ensemble(cfg)
    records_path = out / "records.csv"
    write_records_csv(records, records_path)
    points = [(s.size, s.c_num) for s in summary.per_size if s.c_num is not None]
    fit = fit_bootstrap = None
    if len(points) >= 4:
        fit = fit_shifted_exponential(points)
        fit_bootstrap = bootstrap_fit(points, resamples=200, seed=cfg.master_seed)
    summary_path = out / "summary.json"
    write_summary_json(summary, fit, fit_bootstrap, cfg, summary_path)
    svg_path = out / "cnum_vs_L.svg"
    series = [("measured c_num", points)]
    if fit is not None:
        ls = np.linspace(min(p[0] for p in points), max(p[0] for p in points), 120)
        series.append(("shifted-exponential fit",
                       [(l, fit.a * np.exp(-fit.b * l) + fit.c) for l in ls]))
        series.append(("fitted asymptote", [(ls[0], fit.c), (ls[-1], fit.c)]))
    render_svg_chart(series, "line", svg_path, title="Crossing-time constant vs system size",
                     x_label="L (qubits)", y_label="c_num")
    write_manifest("ensemble", cfg, [records_path, summary_path, svg_path],
                   out / "manifest.json")
    print(f"wrote {records_path}, {summary_path}, {svg_path}")
    return EXIT_OK


def _cmd_verify(cfg, out) -> int:
    checks = run_verification()
    failed = [c for c in checks if not c[1]]
    for name, passed, detail in checks:
        print(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")
    write_manifest("verify", cfg, [], out / "manifest.json")
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return EXIT_OK if not failed else EXIT_VERIFY


def _cmd_plot(cfg, out, input_path: Path) -> int:
    text = Path(input_path).read_text(encoding="utf-8")
    lines = [ln for ln in text.split("\n") if ln]
    header = lines[0] if lines else ""
    rows = [ln.split(",") for ln in lines[1:]]
    svg_path = out / (Path(input_path).stem + ".svg")
    if header == "t,g,g_sq":
        pts = [(float(r[0]), float(r[1])) for r in rows]
        render_svg_chart([("g(t)", pts)], "line", svg_path, x_label="t", y_label="g")
    elif header == "s_lo,s_hi,density":
        bars = [((float(r[0]), float(r[1])), float(r[2])) for r in rows]
        render_svg_chart([("density", bars)], "histogram", svg_path,
                         x_label="|E_i - E_j|", y_label="density")
    elif header == "k,energy":
        pts = [(float(r[0]), float(r[1])) for r in rows]
        render_svg_chart([("energies", pts)], "scatter", svg_path,
                         x_label="k", y_label="E_k")
    elif header.startswith("L,N,index"):
        pts = [(float(r[0]), float(r[5])) for r in rows if r[5] != ""]
        render_svg_chart([("t_fc", pts)], "scatter", svg_path,
                         x_label="L", y_label="first-crossing time")
    else:
        raise ConfigError(f"unrecognized CSV schema in {input_path}: {header!r}")
    write_manifest("plot", cfg, [svg_path], out / "manifest.json")
    print(f"wrote {svg_path}")
    return EXIT_OK


if __name__ == "__main__":
    entry()
