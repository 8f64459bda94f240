"""Dependency-free SVG line charts of optimality gap traces."""

from __future__ import annotations

import math
import warnings
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from ..solvers.trace import RunTrace

__all__ = ["emit_plots", "LOG_FLOOR", "WIDTH", "HEIGHT"]

WIDTH, HEIGHT = 800, 600
LEFT, RIGHT, TOP, BOTTOM = 90, 30, 40, 70
LOG_FLOOR = 1e-16
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf")
X_COLUMNS = {"vs_evaluations": ("evaluations", "oracle calls T"), "vs_iterations": ("k", "iterations N")}


def _nice_ticks(lo: float, hi: float, n: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.ceil(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _fmt_tick(v: float) -> str:
    if v == 0:
        return "0"
    if abs(v) >= 1e5 or abs(v) < 1e-3:
        return f"{v:.0e}"
    return f"{v:g}"


def _load(item) -> RunTrace:
    if isinstance(item, RunTrace):
        return item
    return RunTrace.read_csv(item)


def emit_plots(traces, axes: str = "vs_evaluations", log_y: bool = True, path=None, title: str = "") -> Path | str:
    """Render one SVG with a polyline per trace (gap on the y axis).

    ``traces`` holds :class:`RunTrace` objects or CSV paths.  With ``log_y``,
    gaps below ``LOG_FLOOR`` are clamped to it and a warning is issued.
    Returns the written path, or the SVG text when ``path`` is None.
    """
    traces = [_load(t) for t in traces]
    if not traces:
        raise ValueError("emit_plots needs at least one trace")
    if axes not in X_COLUMNS:
        raise ValueError(f"axes must be one of {tuple(X_COLUMNS)}, got {axes!r}")
    xcol, xlabel = X_COLUMNS[axes]
    series = []
    for tr in traces:
        if len(tr) == 0:
            raise ValueError(f"trace {tr.label or tr.method!r} is empty")
        xs = tr.column(xcol).astype(float)
        ys = tr.column("gap").astype(float)
        if log_y:
            low = ~(ys >= LOG_FLOOR)
            if low.any():
                warnings.warn(
                    f"{int(low.sum())} gap value(s) in {tr.label or tr.method!r} below {LOG_FLOOR:g} clamped for log scale",
                    RuntimeWarning,
                    stacklevel=2,
                )
                ys = np.where(low, LOG_FLOOR, ys)
            ys = np.log10(ys)
        series.append((tr.label or tr.method, xs, ys))

    x_lo = min(s[1].min() for s in series)
    x_hi = max(s[1].max() for s in series)
    y_lo = min(s[2].min() for s in series)
    y_hi = max(s[2].max() for s in series)
    if log_y:
        y_lo, y_hi = math.floor(y_lo), math.ceil(y_hi)
        if y_hi == y_lo:
            y_hi += 1
        step = max(1, math.ceil((y_hi - y_lo) / 10))
        yticks = list(range(int(y_lo), int(y_hi) + 1, step))
    else:
        yticks = _nice_ticks(y_lo, y_hi)
        y_lo, y_hi = min(y_lo, yticks[0]), max(y_hi, yticks[-1])
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    xticks = _nice_ticks(x_lo, x_hi)

    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def px(x):
        return LEFT + (x - x_lo) / (x_hi - x_lo) * pw

    def py(y):
        return TOP + ph - (y - y_lo) / (y_hi - y_lo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" font-size="16">{escape(title)}</text>')
    for t in xticks:
        if x_lo <= t <= x_hi:
            x = px(t)
            out.append(f'<line x1="{x:.2f}" y1="{TOP + ph}" x2="{x:.2f}" y2="{TOP + ph + 5}" stroke="black"/>')
            out.append(f'<text class="xtick" x="{x:.2f}" y="{TOP + ph + 20}" text-anchor="middle" font-size="12">{_fmt_tick(t)}</text>')
    for t in yticks:
        y = py(t)
        label = f"1e{t}" if log_y else _fmt_tick(t)
        out.append(f'<line x1="{LEFT - 5}" y1="{y:.2f}" x2="{LEFT}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<line x1="{LEFT}" y1="{y:.2f}" x2="{LEFT + pw}" y2="{y:.2f}" stroke="#dddddd"/>')
        out.append(f'<text class="ytick" x="{LEFT - 8}" y="{y + 4:.2f}" text-anchor="end" font-size="12">{label}</text>')
    out.append(f'<text x="{LEFT + pw / 2:.1f}" y="{HEIGHT - 25}" text-anchor="middle" font-size="14">{xlabel}</text>')
    out.append(
        f'<text x="20" y="{TOP + ph / 2:.1f}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 20 {TOP + ph / 2:.1f})">f(x_k) - f*</text>'
    )
    for i, (name, xs, ys) in enumerate(series):
        color = COLORS[i % len(COLORS)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(xs, ys))
        out.append(f'<polyline data-series="{escape(name)}" fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
    lx, ly = LEFT + pw - 170, TOP + 12
    for i, (name, _, _) in enumerate(series):
        color = COLORS[i % len(COLORS)]
        y = ly + 18 * i
        out.append(f'<line x1="{lx}" y1="{y}" x2="{lx + 24}" y2="{y}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text class="legend" x="{lx + 30}" y="{y + 4}" font-size="12">{escape(name)}</text>')
    out.append("</svg>")
    svg = "\n".join(out) + "\n"
    if path is None:
        return svg
    path = Path(path)
    path.write_text(svg, encoding="utf-8")
    return path
