"""CSV and JSON emission with round-trip-exact float formatting.

Reals are printed with 17 significant digits, which round-trips IEEE
doubles exactly; golden files diffed across runs and platforms stay stable.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .config import config_echo
from .analytics import C_ANALYTIC_LIMIT, c_analytic, predicted_gap_dispersion
from .ensemble import EnsembleSummary, ExperimentConfig, Histogram, SampleRecord
from .errors import InvalidArgumentError

ARTIFACT_VERSION = "0.1.0"

RECORD_COLUMNS = ("L", "N", "index", "seed", "sigma_g_sq", "t_fc", "censored",
                  "d_eff", "g2_inf", "bound_fraction")


def fmt(value) -> str:
    """One CSV cell: 17 significant digits for reals, plain decimal ints,
    empty cell for missing values."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def write_records_csv(records, path) -> None:
    lines = [",".join(RECORD_COLUMNS)]
    for r in records:
        lines.append(",".join([
            fmt(r.size), fmt(r.n), fmt(r.index), fmt(r.seed), fmt(r.sigma_g_sq),
            fmt(r.t_fc), fmt(r.censored), fmt(r.d_eff), fmt(r.g2_inf),
            fmt(r.bound_fraction),
        ]))
    write_text(path, "\n".join(lines) + "\n")


def parse_records_csv(path):
    """Inverse of write_records_csv; empty cells come back as None."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.split("\n") if ln]
    if not lines or lines[0] != ",".join(RECORD_COLUMNS):
        raise InvalidArgumentError(f"{path} is not a records CSV")
    records = []
    for ln in lines[1:]:
        cells = ln.split(",")
        records.append(SampleRecord(
            size=int(cells[0]), n=int(cells[1]), index=int(cells[2]), seed=int(cells[3]),
            sigma_g_sq=_opt_float(cells[4]), t_fc=_opt_float(cells[5]),
            censored=cells[6] == "1", d_eff=_opt_float(cells[7]),
            g2_inf=_opt_float(cells[8]), bound_fraction=_opt_float(cells[9]),
            rejected_degenerate=cells[4] == "",
        ))
    return records


def _opt_float(cell: str):
    return None if cell == "" else float(cell)


def write_trace_csv(trace, path) -> None:
    lines = ["t,g,g_sq"]
    for t, g, gsq in zip(trace.times, trace.values, trace.sq_values):
        lines.append(f"{fmt(t)},{fmt(g)},{fmt(gsq)}")
    write_text(path, "\n".join(lines) + "\n")


def write_histogram_csv(hist: Histogram, path) -> None:
    lines = ["s_lo,s_hi,density"]
    for lo, hi, d in zip(hist.edges[:-1], hist.edges[1:], hist.densities):
        lines.append(f"{fmt(lo)},{fmt(hi)},{fmt(d)}")
    write_text(path, "\n".join(lines) + "\n")


def summary_payload(summary: EnsembleSummary, fit, fit_bootstrap, cfg: ExperimentConfig) -> dict:
    per_size = []
    for s in summary.per_size:
        per_size.append({
            "L": s.size, "N": s.n, "sigma": s.sigma,
            "mean_t_fc": s.mean_t_fc, "se_t_fc": s.se_t_fc,
            "mean_d_eff": s.mean_d_eff, "mean_sigma_g_sq": s.mean_sigma_g_sq,
            "mean_g2_inf": s.mean_g2_inf, "mean_bound_fraction": s.mean_bound_fraction,
            "c_num": s.c_num, "n_completed": s.n_completed, "n_censored": s.n_censored,
            "n_rejected_degenerate": s.n_rejected_degenerate,
        })
    fit_block = None
    if fit is not None:
        fit_block = {"a": fit.a, "b": fit.b, "c": fit.c, "rmse": fit.rmse,
                     "n_points": fit.n_points, "bootstrap": fit_bootstrap}
    analytic = {
        "c_analytic_limit": C_ANALYTIC_LIMIT,
        "c_analytic_per_size": [{"N": s.n, "value": c_analytic(s.n)} for s in summary.per_size],
        "predicted_dispersion": [
            {"N": s.n, "sigma": s.sigma, "value": predicted_gap_dispersion(s.n, s.sigma)}
            for s in summary.per_size],
    }
    return {"per_size": per_size, "fit": fit_block, "analytic": analytic,
            "config_echo": config_echo(cfg)}


def write_summary_json(summary, fit, fit_bootstrap, cfg, path) -> None:
    payload = summary_payload(summary, fit, fit_bootstrap, cfg)
    write_text(path, json.dumps(payload, indent=2, allow_nan=True) + "\n")


def write_manifest(command: str, cfg: ExperimentConfig, outputs, path) -> None:
    """Record the fully resolved configuration so a run can be reproduced
    bit for bit from its manifest alone."""
    payload = {
        "artifact_version": ARTIFACT_VERSION,
        "command": command,
        "config": config_echo(cfg),
        "outputs": sorted(Path(o).name for o in outputs),
    }
    write_text(path, json.dumps(payload, indent=2) + "\n")


def write_text(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")
