"""Dependency-free SVG line charts of axiom satisfaction rates.

One panel per (model, p) for experiments 1 and 2 with ``phi``/``alpha``
on the x axis, and one panel per (m, k) for experiment 3 with ``p`` on
the x axis. Each panel has one polyline per verdict.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from ..sampling import URN
from .experiments import summarize

SERIES = {
    "jr": ("JR", "#1f77b4", "6,3"),
    "droop_jr": ("Droop-JR", "#ff7f0e", ""),
    "ejr_plus": ("EJR+", "#2ca02c", "6,3"),
    "droop_ejr_plus": ("Droop-EJR+", "#d62728", ""),
}
DEFAULT_SERIES = {1: tuple(SERIES), 2: ("droop_jr", "droop_ejr_plus"), 3: tuple(SERIES)}

PANEL_W, PANEL_H = 260, 200
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 44, 12, 26, 34
COLUMNS = 4


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".") or "0"


def to_plot(x: float, y: float, ox: float, oy: float) -> tuple[float, float]:
    """Map data ``(x, y)`` in ``[0, 1]^2`` into the plot area of the panel at ``(ox, oy)``."""
    w = PANEL_W - MARGIN_L - MARGIN_R
    h = PANEL_H - MARGIN_T - MARGIN_B
    return ox + MARGIN_L + x * w, oy + MARGIN_T + (1 - y) * h


def _panel(title, xlabel, points, series, ox, oy):
    out = ['<g class="panel">']
    x0, y0 = to_plot(0, 0, ox, oy)
    x1, y1 = to_plot(1, 1, ox, oy)
    out.append(
        f'<rect x="{x0:.1f}" y="{y1:.1f}" width="{x1 - x0:.1f}" height="{y0 - y1:.1f}" '
        'fill="none" stroke="#444" stroke-width="1"/>'
    )
    for t in (0, 0.5, 1):
        tx, _ = to_plot(t, 0, ox, oy)
        _, ty = to_plot(0, t, ox, oy)
        out.append(f'<text x="{tx:.1f}" y="{y0 + 13:.1f}" font-size="10" text-anchor="middle">{_fmt(t)}</text>')
        out.append(f'<text x="{x0 - 4:.1f}" y="{ty + 3:.1f}" font-size="10" text-anchor="end">{_fmt(t)}</text>')
    out.append(
        f'<text x="{(x0 + x1) / 2:.1f}" y="{y0 + 27:.1f}" font-size="11" text-anchor="middle">{escape(xlabel)}</text>'
    )
    out.append(
        f'<text x="{(x0 + x1) / 2:.1f}" y="{oy + 16:.1f}" font-size="12" text-anchor="middle">{escape(title)}</text>'
    )
    for name in series:
        label, color, dash = SERIES[name]
        coords = [to_plot(x, fr[name], ox, oy) for x, fr in points]
        if not coords:
            continue
        pts = " ".join(f"{a:.1f},{b:.1f}" for a, b in coords)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(
            f'<polyline class="series" data-series="{label}" points="{pts}" fill="none" '
            f'stroke="{color}" stroke-width="1.6"{dash_attr}/>'
        )
    out.append("</g>")
    return out


def emit_plot(records, series=None, title: str | None = None) -> str:
    """SVG document with one panel per grid slice.

    Raises
    ------
    ValueError
        If the records come from more than one experiment.
    """
    records = list(records)
    exps = {r.experiment for r in records}
    if len(exps) > 1:
        raise ValueError(f"records mix experiments {sorted(exps)}")
    exp = exps.pop() if exps else 1
    series = tuple(series or DEFAULT_SERIES[exp])
    frac = summarize(records)
    panels: dict = {}
    for (model, p, param, m, n, k), fr in frac.items():
        if exp == 3:
            key, x = (f"m={m}, k={k}", (m, k), "p"), p
        else:
            xlabel = "alpha" if model == URN else "phi"
            key, x = (f"{model}, p={_fmt(p)}", (model, p), xlabel), param
        panels.setdefault(key, []).append((x, fr))
    if not panels:
        panels[("no data", (), "p" if exp == 3 else "phi")] = []
    keys = sorted(panels, key=lambda kv: kv[1])
    rows = (len(keys) + COLUMNS - 1) // COLUMNS
    cols = min(COLUMNS, len(keys))
    legend_h = 24
    width = cols * PANEL_W
    height = rows * PANEL_H + legend_h + (20 if title else 0)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    top = 0
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="15" font-size="14" text-anchor="middle">{escape(title)}</text>')
        top = 20
    lx = 10
    for name in series:
        label, color, dash = SERIES[name]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(
            f'<line x1="{lx}" y1="{top + 12}" x2="{lx + 24}" y2="{top + 12}" stroke="{color}" stroke-width="2"{dash_attr}/>'
        )
        out.append(f'<text x="{lx + 28}" y="{top + 16}" font-size="11">{escape(label)}</text>')
        lx += 40 + 7 * len(label)
    for j, key in enumerate(keys):
        ox = (j % COLUMNS) * PANEL_W
        oy = top + legend_h + (j // COLUMNS) * PANEL_H
        pts = sorted(panels[key], key=lambda t: t[0])
        out.extend(_panel(key[0], key[2], pts, series, ox, oy))
    out.append("</svg>")
    return "\n".join(out) + "\n"
