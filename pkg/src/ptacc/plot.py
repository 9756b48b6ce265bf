"""Static SVG output: line plots and heatmaps on a fixed 800x600 canvas."""

from __future__ import annotations

import numpy as np

WIDTH, HEIGHT = 800, 600
MARGIN = 70
PALETTE = ["#1f4e9c", "#c0392b", "#27864a", "#8e44ad"]


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _scale(lo: float, hi: float, a: float, b: float):
    if hi == lo:
        hi = lo + 1.0
    return lambda v: a + (np.asarray(v) - lo) * (b - a) / (hi - lo)


def _frame(title: str, xlabel: str, ylabel: str, xr, yr) -> list[str]:
    x0, x1, y0, y1 = MARGIN, WIDTH - MARGIN / 2, HEIGHT - MARGIN, MARGIN / 2
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="13">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="22" text-anchor="middle" font-size="16">{title}</text>',
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
        f'<text x="{(x0 + x1) / 2}" y="{HEIGHT - 20}" text-anchor="middle">{xlabel}</text>',
        f'<text x="18" y="{(y0 + y1) / 2}" text-anchor="middle" '
        f'transform="rotate(-90 18 {(y0 + y1) / 2})">{ylabel}</text>',
    ]
    sx = _scale(xr[0], xr[1], x0, x1)
    sy = _scale(yr[0], yr[1], y0, y1)
    for v in np.linspace(xr[0], xr[1], 6):
        px = float(sx(v))
        out.append(f'<line x1="{px:.2f}" y1="{y0}" x2="{px:.2f}" y2="{y0 + 5}" stroke="black"/>')
        out.append(f'<text x="{px:.2f}" y="{y0 + 20}" text-anchor="middle">{_fmt(v)}</text>')
    for v in np.linspace(yr[0], yr[1], 6):
        py = float(sy(v))
        out.append(f'<line x1="{x0 - 5}" y1="{py:.2f}" x2="{x0}" y2="{py:.2f}" stroke="black"/>')
        out.append(f'<text x="{x0 - 8}" y="{py + 4:.2f}" text-anchor="end">{_fmt(v)}</text>')
    return out


def line_plot(series: dict, title: str, xlabel: str, ylabel: str) -> str:
    """``series`` maps a legend label to an (x, y) pair of arrays."""
    xs = np.concatenate([np.asarray(x, float) for x, _ in series.values()])
    ys = np.concatenate([np.asarray(y, float) for _, y in series.values()])
    xr = (float(xs.min()), float(xs.max()))
    pad = 0.05 * (float(ys.max()) - float(ys.min()) or 1.0)
    yr = (float(ys.min()) - pad, float(ys.max()) + pad)
    out = _frame(title, xlabel, ylabel, xr, yr)
    sx = _scale(xr[0], xr[1], MARGIN, WIDTH - MARGIN / 2)
    sy = _scale(yr[0], yr[1], HEIGHT - MARGIN, MARGIN / 2)
    for i, (label, (x, y)) in enumerate(series.items()):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{float(a):.2f},{float(b):.2f}" for a, b in zip(sx(x), sy(y)))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        out.append(f'<text x="{WIDTH - MARGIN}" y="{MARGIN / 2 + 18 * (i + 1)}" '
                   f'text-anchor="end" fill="{color}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def heatmap(times, y, values, title: str, xlabel: str, ylabel: str) -> str:
    """Cells over (times, y); ``values`` has shape (len(times), len(y))."""
    times = np.asarray(times, float)
    y = np.asarray(y, float)
    v = np.asarray(values, float)
    out = _frame(title, xlabel, ylabel, (float(times.min()), float(times.max())),
                 (float(y.min()), float(y.max())))
    sx = _scale(0, len(times), MARGIN, WIDTH - MARGIN / 2)
    sy = _scale(0, len(y), HEIGHT - MARGIN, MARGIN / 2)
    vmax = float(v.max()) or 1.0
    w = float(sx(1) - sx(0))
    h = float(sy(0) - sy(1))
    for i in range(len(times)):
        for j in range(len(y)):
            level = int(round(255 * (1.0 - min(1.0, max(0.0, v[i, j] / vmax)))))
            out.append(f'<rect x="{float(sx(i)):.2f}" y="{float(sy(j + 1)):.2f}" width="{w + 0.3:.2f}" '
                       f'height="{h + 0.3:.2f}" fill="rgb(255,{level},{level})"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
