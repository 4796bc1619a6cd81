"""Shifted-exponential least squares: y = A exp(-B L) + c.

The decay rate B enters nonlinearly, so the fit profiles it out: for fixed
B the optimal (A, c) solve an ordinary 2-column linear least squares, and
the one-dimensional profiled objective SSE(B) is minimized by a
log-spaced scan followed by golden-section refinement.  Deterministic by
construction, no starting-guess sensitivity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .rng import RngStream

_B_LO = 1e-3
_B_HI = 10.0
_SCAN_POINTS = 200
_GOLDEN_RTOL = 1e-9
_INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class FitResult:
    a: float
    b: float
    c: float
    rmse: float
    n_points: int


def _design(b: float, xs: np.ndarray) -> np.ndarray:
    return np.column_stack([np.exp(-b * xs), np.ones_like(xs)])


def _envelope(ys: np.ndarray):
    span = float(ys.max() - ys.min())
    return float(ys.min()) - span, float(ys.max()) + span


def _profiled_sse(b: float, xs: np.ndarray, ys: np.ndarray):
    """SSE after solving (A, c) for fixed B.

    Decay-free data makes B unidentifiable and lets (A, c) run away along a
    collinear direction, so candidate B values whose offset c leaves the
    data envelope (the data range widened by one range on each side) are
    treated as infeasible.
    """
    x = _design(b, xs)
    coef, *_ = np.linalg.lstsq(x, ys, rcond=None)
    lo, hi = _envelope(ys)
    if not lo <= coef[1] <= hi:
        return float("inf"), coef
    resid = ys - x @ coef
    return float(resid @ resid), coef


def fit_shifted_exponential(points) -> FitResult:
    """Fit A exp(-B L) + c to (L, y) pairs; returns FitResult with the RMSE
    of the fitted curve recomputed over the inputs."""
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 4:
        raise InvalidArgumentError(f"need at least 4 points, got {len(pts)}")
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    if np.unique(xs).size < 2:
        raise InvalidArgumentError("all abscissae are equal; decay rate is unidentifiable")

    best = [np.inf, None, None]  # sse, b, (a, c)

    def consider(b: float) -> float:
        sse, coef = _profiled_sse(b, xs, ys)
        if sse < best[0]:
            best[0], best[1], best[2] = sse, b, coef
        return sse

    scan = np.geomspace(_B_LO, _B_HI, _SCAN_POINTS)
    sses = np.array([consider(b) for b in scan])
    if best[1] is None:
        raise InvalidArgumentError("no feasible decay rate keeps the offset near the data")
    anchor = int(np.argmin(sses))
    lo = scan[max(anchor - 1, 0)]
    hi = scan[min(anchor + 1, _SCAN_POINTS - 1)]

    # golden-section refinement of the profiled objective; the best feasible
    # point seen anywhere wins, so a minimum pinned at the feasibility edge
    # still returns finite parameters
    c1 = hi - _INV_PHI * (hi - lo)
    c2 = lo + _INV_PHI * (hi - lo)
    f1, f2 = consider(c1), consider(c2)
    while (hi - lo) > _GOLDEN_RTOL * hi:
        if f1 < f2:
            hi, c2, f2 = c2, c1, f1
            c1 = hi - _INV_PHI * (hi - lo)
            f1 = consider(c1)
        else:
            lo, c1, f1 = c1, c2, f2
            c2 = lo + _INV_PHI * (hi - lo)
            f2 = consider(c2)
    consider(0.5 * (lo + hi))
    b_star, (a, c) = best[1], best[2]
    fitted = a * np.exp(-b_star * xs) + c
    rmse = float(np.sqrt(np.mean((ys - fitted) ** 2)))
    assert abs(rmse - np.sqrt(best[0] / len(pts))) <= 1e-9 * max(1.0, rmse), \
        "stored RMSE out of sync"
    return FitResult(a=float(a), b=float(b_star), c=float(c), rmse=rmse, n_points=len(pts))


def bootstrap_fit(points, resamples: int = 200, seed: int = 0) -> dict:
    """Nonparametric bootstrap standard errors for the fit parameters.

    Resamples the points with replacement; resamples with fewer than two
    distinct abscissae cannot identify B and are skipped (counted).
    """
    pts = [(float(x), float(y)) for x, y in points]
    stream = RngStream(seed)
    acc = {"a": [], "b": [], "c": []}
    skipped = 0
    for _ in range(resamples):
        u = stream.random_block(len(pts))
        idx = np.minimum((u * len(pts)).astype(np.int64), len(pts) - 1)
        resample = [pts[i] for i in idx]
        if len({p[0] for p in resample}) < 2:
            skipped += 1
            continue
        fit = fit_shifted_exponential(resample) if len(resample) >= 4 else None
        if fit is None:
            skipped += 1
            continue
        acc["a"].append(fit.a)
        acc["b"].append(fit.b)
        acc["c"].append(fit.c)
    out = {"n_resamples": resamples, "n_skipped": skipped}
    for key, vals in acc.items():
        out[f"se_{key}"] = float(np.std(vals, ddof=1)) if len(vals) > 1 else float("nan")
    return out
