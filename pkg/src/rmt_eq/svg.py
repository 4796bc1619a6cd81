"""Minimal deterministic SVG charts (lines, scatter, histograms).

Hand-rolled rather than delegated to a plotting library so that identical
inputs give byte-identical files: no timestamps, no generated ids, no
library version strings.
"""

from __future__ import annotations

import math
from pathlib import Path

from .errors import InvalidArgumentError

WIDTH, HEIGHT = 800, 500
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 40, 50

PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
           "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")

_KINDS = ("line", "scatter", "histogram")


def _nice_ticks(lo: float, hi: float, target: int = 6):
    """Round tick positions covering [lo, hi]."""
    if hi <= lo:
        hi = lo + 1.0
    span = hi - lo
    raw = span / max(target - 1, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + step * 1e-9:
        ticks.append(0.0 if abs(t) < step * 1e-9 else t)
        t += step
    return ticks


def _fmt_tick(value: float) -> str:
    if value == 0:
        return "0"
    if 1e-3 <= abs(value) < 1e4:
        text = f"{value:.6g}"
    else:
        text = f"{value:.3e}"
    return text


def render_svg_chart(series, kind: str, path, title: str = "",
                     x_label: str = "", y_label: str = "") -> None:
    """Render labelled series to a self-contained SVG file.

    series: list of (label, points) with points a sequence of (x, y);
    for kind="histogram" each point is one bar given as ((x_lo, x_hi), y).
    """
    if kind not in _KINDS:
        raise InvalidArgumentError(f"kind must be one of {_KINDS}, got {kind!r}")
    if not series or all(len(points) == 0 for _, points in series):
        raise InvalidArgumentError("need at least one nonempty series")

    xs, ys = [], []
    for _, points in series:
        for p in points:
            if kind == "histogram":
                (xlo, xhi), y = p
                xs.extend((float(xlo), float(xhi)))
            else:
                x, y = p
                xs.append(float(x))
            ys.append(float(y))
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(min(ys), 0.0 if kind == "histogram" else min(ys)), max(ys)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    pad_x = 0.04 * (x_hi - x_lo)
    pad_y = 0.06 * (y_hi - y_lo)
    x_lo, x_hi = x_lo - pad_x, x_hi + pad_x
    y_lo, y_hi = y_lo - pad_y, y_hi + pad_y

    def sx(x):
        return MARGIN_L + (x - x_lo) / (x_hi - x_lo) * (WIDTH - MARGIN_L - MARGIN_R)

    def sy(y):
        return HEIGHT - MARGIN_B - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - MARGIN_T - MARGIN_B)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="16">{_esc(title)}</text>')

    for t in _nice_ticks(x_lo + pad_x, x_hi - pad_x):
        px = sx(t)
        parts.append(f'<line x1="{px:.2f}" y1="{HEIGHT - MARGIN_B}" x2="{px:.2f}" '
                     f'y2="{HEIGHT - MARGIN_B + 5}" stroke="black"/>')
        parts.append(f'<text x="{px:.2f}" y="{HEIGHT - MARGIN_B + 20}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="12">{_fmt_tick(t)}</text>')
    for t in _nice_ticks(y_lo + pad_y, y_hi - pad_y):
        py = sy(t)
        parts.append(f'<line x1="{MARGIN_L - 5}" y1="{py:.2f}" x2="{MARGIN_L}" '
                     f'y2="{py:.2f}" stroke="black"/>')
        parts.append(f'<text x="{MARGIN_L - 8}" y="{py + 4:.2f}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="12">{_fmt_tick(t)}</text>')
    parts.append(f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{WIDTH - MARGIN_L - MARGIN_R}" '
                 f'height="{HEIGHT - MARGIN_T - MARGIN_B}" fill="none" stroke="black"/>')
    if x_label:
        parts.append(f'<text x="{(MARGIN_L + WIDTH - MARGIN_R) / 2:.1f}" y="{HEIGHT - 12}" '
                     f'text-anchor="middle" font-family="sans-serif" font-size="13">'
                     f'{_esc(x_label)}</text>')
    if y_label:
        cx, cy = 18, (MARGIN_T + HEIGHT - MARGIN_B) / 2
        parts.append(f'<text x="{cx}" y="{cy:.1f}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="13" '
                     f'transform="rotate(-90 {cx} {cy:.1f})">{_esc(y_label)}</text>')

    for si, (label, points) in enumerate(series):
        color = PALETTE[si % len(PALETTE)]
        if kind == "histogram":
            for (xlo, xhi), y in points:
                x0, x1 = sx(float(xlo)), sx(float(xhi))
                y0, y1 = sy(float(y)), sy(0.0)
                parts.append(f'<rect x="{x0:.2f}" y="{min(y0, y1):.2f}" '
                             f'width="{x1 - x0:.2f}" height="{abs(y1 - y0):.2f}" '
                             f'fill="{color}" fill-opacity="0.55" stroke="none"/>')
        elif kind == "line":
            coords = " ".join(f"{sx(float(x)):.2f},{sy(float(y)):.2f}" for x, y in points)
            parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                         f'stroke-width="1.5"/>')
        else:
            for x, y in points:
                parts.append(f'<circle cx="{sx(float(x)):.2f}" cy="{sy(float(y)):.2f}" '
                             f'r="3" fill="{color}"/>')

    ly = MARGIN_T + 14
    for si, (label, _) in enumerate(series):
        if not label:
            continue
        color = PALETTE[si % len(PALETTE)]
        lx = WIDTH - MARGIN_R - 170
        parts.append(f'<rect x="{lx}" y="{ly - 9}" width="12" height="12" fill="{color}"/>')
        parts.append(f'<text x="{lx + 18}" y="{ly + 1}" font-family="sans-serif" '
                     f'font-size="12">{_esc(label)}</text>')
        ly += 18

    parts.append("</svg>")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(parts) + "\n", encoding="utf-8", newline="\n")


def _esc(text: str) -> str:
    return (str(text).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;"))
