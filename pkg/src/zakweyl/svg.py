"""Minimal SVG 1.1 plotting: axes, polylines and a heat map.

Just enough to draw dispersions, |m_+| and arg m_+ traces and parameter
sweeps without a plotting stack.  Non-finite samples break polylines and
render as grey cells in heat maps.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 640, 420
MARGIN = dict(left=70, right=110, top=40, bottom=55)
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b")
# a few anchors of a perceptually ordered blue-green-yellow map
_CMAP = np.array([
    [68, 1, 84], [59, 82, 139], [33, 145, 140], [94, 201, 98], [253, 231, 37],
], dtype=float)
MISSING = "#bdbdbd"


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def _tick_label(x: float) -> str:
    if x == 0:
        return "0"
    if abs(x) >= 1e4 or abs(x) < 1e-3:
        return f"{x:.2g}"
    return f"{x:.4g}"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((s * mag for s in (1, 2, 2.5, 5, 10) if s * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step) * step
    out = []
    x = first
    while x <= hi + 1e-9 * step:
        out.append(0.0 if abs(x) < 1e-12 * step else x)
        x += step
    return out


def _range(values) -> tuple[float, float]:
    v = np.asarray(values, dtype=float)
    v = v[np.isfinite(v)]
    if v.size == 0:
        return 0.0, 1.0
    lo, hi = float(v.min()), float(v.max())
    if hi - lo < 1e-12 * max(1.0, abs(lo)):
        pad = 0.5 * max(1.0, abs(lo)) * 1e-3 or 0.5
        return lo - pad, hi + pad
    pad = 0.04 * (hi - lo)
    return lo - pad, hi + pad


class _Frame:
    def __init__(self, xlim, ylim):
        self.x0, self.x1 = xlim
        self.y0, self.y1 = ylim
        self.left = MARGIN["left"]
        self.right = WIDTH - MARGIN["right"]
        self.top = MARGIN["top"]
        self.bottom = HEIGHT - MARGIN["bottom"]

    def px(self, x):
        return self.left + (x - self.x0) / (self.x1 - self.x0) * (self.right - self.left)

    def py(self, y):
        return self.bottom - (y - self.y0) / (self.y1 - self.y0) * (self.bottom - self.top)

    def axes(self, title: str, xlabel: str, ylabel: str) -> list[str]:
        out = [
            f'<rect x="{self.left}" y="{self.top}" width="{self.right - self.left}" '
            f'height="{self.bottom - self.top}" fill="none" stroke="#000"/>'
        ]
        for t in _ticks(self.x0, self.x1):
            x = _fmt(self.px(t))
            out.append(f'<line x1="{x}" y1="{self.bottom}" x2="{x}" y2="{self.bottom + 5}" stroke="#000"/>')
            out.append(f'<text x="{x}" y="{self.bottom + 18}" text-anchor="middle">{_tick_label(t)}</text>')
        for t in _ticks(self.y0, self.y1):
            y = _fmt(self.py(t))
            out.append(f'<line x1="{self.left - 5}" y1="{y}" x2="{self.left}" y2="{y}" stroke="#000"/>')
            out.append(f'<text x="{self.left - 8}" y="{y}" text-anchor="end" dominant-baseline="middle">{_tick_label(t)}</text>')
        cx = _fmt(0.5 * (self.left + self.right))
        cy = _fmt(0.5 * (self.top + self.bottom))
        out.append(f'<text x="{cx}" y="{HEIGHT - 15}" text-anchor="middle">{escape(xlabel)}</text>')
        out.append(
            f'<text x="18" y="{cy}" text-anchor="middle" transform="rotate(-90 18 {cy})">{escape(ylabel)}</text>'
        )
        out.append(f'<text x="{cx}" y="24" text-anchor="middle" font-size="15">{escape(title)}</text>')
        return out


def _document(body: list[str]) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">\n'
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#fff"/>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def line_plot(series, title: str = "", xlabel: str = "", ylabel: str = "") -> str:
    """``series`` is a list of (label, xs, ys).  Returns SVG text."""
    xs_all = np.concatenate([np.asarray(x, dtype=float) for _, x, _ in series]) if series else np.zeros(0)
    ys_all = np.concatenate([np.asarray(y, dtype=float) for _, _, y in series]) if series else np.zeros(0)
    frame = _Frame(_range(xs_all), _range(ys_all))
    body = frame.axes(title, xlabel, ylabel)
    for i, (label, xs, ys) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        ok = np.isfinite(xs) & np.isfinite(ys)
        # split into runs of finite points
        runs, cur = [], []
        for x, y, good in zip(xs, ys, ok):
            if good:
                cur.append(f"{_fmt(frame.px(x))},{_fmt(frame.py(y))}")
            elif cur:
                runs.append(cur)
                cur = []
        if cur:
            runs.append(cur)
        for run in runs:
            body.append(f'<polyline class="series" fill="none" stroke="{color}" stroke-width="1.5" points="{" ".join(run)}"/>')
        ly = MARGIN["top"] + 16 * i + 8
        body.append(f'<line x1="{WIDTH - 100}" y1="{ly}" x2="{WIDTH - 80}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        body.append(f'<text x="{WIDTH - 75}" y="{ly}" dominant-baseline="middle">{escape(str(label))}</text>')
    return _document(body)


def _color(t: float) -> str:
    if not math.isfinite(t):
        return MISSING
    t = min(max(t, 0.0), 1.0) * (len(_CMAP) - 1)
    i = min(int(t), len(_CMAP) - 2)
    c = _CMAP[i] + (t - i) * (_CMAP[i + 1] - _CMAP[i])
    return "#" + "".join(f"{int(round(v)):02x}" for v in c)


def heatmap(xs, ys, values, title: str = "", xlabel: str = "", ylabel: str = "",
            vmin: float | None = None, vmax: float | None = None) -> str:
    """Cells centred on the lattice (xs[i], ys[j]) coloured by values[j, i]."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    v = np.asarray(values, dtype=float).reshape(len(ys), len(xs))

    def edges(c):
        if c.size == 1:
            return np.array([c[0] - 0.5, c[0] + 0.5])
        mid = 0.5 * (c[1:] + c[:-1])
        return np.concatenate(([2 * c[0] - mid[0]], mid, [2 * c[-1] - mid[-1]]))

    ex, ey = edges(xs), edges(ys)
    frame = _Frame((float(ex[0]), float(ex[-1])), (float(ey[0]), float(ey[-1])))
    finite = v[np.isfinite(v)]
    lo = vmin if vmin is not None else (float(finite.min()) if finite.size else 0.0)
    hi = vmax if vmax is not None else (float(finite.max()) if finite.size else 1.0)
    span = hi - lo if hi > lo else 1.0
    body = []
    for j in range(len(ys)):
        for i in range(len(xs)):
            x0, x1 = frame.px(ex[i]), frame.px(ex[i + 1])
            y0, y1 = frame.py(ey[j + 1]), frame.py(ey[j])
            body.append(
                f'<rect class="cell" x="{_fmt(x0)}" y="{_fmt(y0)}" width="{_fmt(x1 - x0)}" '
                f'height="{_fmt(y1 - y0)}" fill="{_color((v[j, i] - lo) / span)}"/>'
            )
    body += frame.axes(title, xlabel, ylabel)
    # colour bar
    bx, top, bottom = WIDTH - MARGIN["right"] + 25, MARGIN["top"], HEIGHT - MARGIN["bottom"]
    steps = 32
    for s in range(steps):
        y0 = bottom - (s + 1) * (bottom - top) / steps
        body.append(
            f'<rect x="{bx}" y="{_fmt(y0)}" width="14" height="{_fmt((bottom - top) / steps + 0.5)}" '
            f'fill="{_color((s + 0.5) / steps)}"/>'
        )
    body.append(f'<text x="{bx + 18}" y="{top + 4}">{_tick_label(hi)}</text>')
    body.append(f'<text x="{bx + 18}" y="{bottom}">{_tick_label(lo)}</text>')
    return _document(body)
