"""Comparative SVG chart: median solve time against K, log-scaled."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape, quoteattr

from .bench import median_elapsed
from .errors import InsufficientDataError

COLORS = {
    "brute": "#d62728",
    "hungarian": "#1f77b4",
    "bnb_fifo": "#ff7f0e",
    "bnb_lifo": "#9467bd",
    "bnb_least": "#8c564b",
    "bnb_astar": "#2ca02c",
}

WIDTH, HEIGHT = 760, 460
LEFT, RIGHT, TOP, BOTTOM = 80, 170, 50, 60


def emit_svg_plot(records) -> bytes:
    """Render one polyline per solver with at least one successful row.

    Raises InsufficientDataError unless the successful rows span at least
    two distinct sizes.
    """
    medians = median_elapsed(records)
    sizes = sorted({k for by_k in medians.values() for k in by_k})
    if not medians or len(sizes) < 2:
        raise InsufficientDataError("plot needs at least one solver and two distinct sizes")

    logs = [math.log10(max(t, 1)) for by_k in medians.values() for t in by_k.values()]
    y_lo, y_hi = math.floor(min(logs)), math.ceil(max(logs))
    if y_hi == y_lo:
        y_hi += 1
    k_lo, k_hi = sizes[0], sizes[-1]
    plot_w = WIDTH - LEFT - RIGHT
    plot_h = HEIGHT - TOP - BOTTOM

    def px(k):
        return LEFT + (k - k_lo) / (k_hi - k_lo) * plot_w

    def py(ns):
        return TOP + (y_hi - math.log10(max(ns, 1))) / (y_hi - y_lo) * plot_h

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{LEFT + plot_w / 2:.1f}" y="28" text-anchor="middle" font-size="16">'
        'Median solve time by instance size</text>',
    ]
    for e in range(y_lo, y_hi + 1):
        y = py(10**e)
        out.append(f'<line x1="{LEFT}" y1="{y:.2f}" x2="{LEFT + plot_w}" y2="{y:.2f}" stroke="#ddd"/>')
        out.append(f'<text x="{LEFT - 8}" y="{y + 4:.2f}" text-anchor="end">1e{e}</text>')
    for k in sizes:
        x = px(k)
        out.append(f'<line x1="{x:.2f}" y1="{TOP + plot_h}" x2="{x:.2f}" y2="{TOP + plot_h + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{TOP + plot_h + 20}" text-anchor="middle">{k}</text>')
    out.append(f'<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>')
    out.append(f'<text x="{LEFT + plot_w / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle">K (workers = jobs)</text>')
    out.append(f'<text transform="translate(20 {TOP + plot_h / 2:.1f}) rotate(-90)" text-anchor="middle">'
               'median elapsed (ns, log scale)</text>')

    for idx, (solver, by_k) in enumerate(sorted(medians.items())):
        color = COLORS.get(solver, "#333")
        name = quoteattr(solver)
        pts = " ".join(f"{px(k):.2f},{py(t):.2f}" for k, t in by_k.items())
        out.append(f'<polyline class="series" data-solver={name} points="{pts}" '
                   f'fill="none" stroke="{color}" stroke-width="2"/>')
        for k, t in by_k.items():
            out.append(f'<circle data-solver={name} data-k="{k}" data-median-ns="{t:.0f}" '
                       f'cx="{px(k):.2f}" cy="{py(t):.2f}" r="3" fill="{color}"/>')
        ly = TOP + 10 + idx * 20
        lx = LEFT + plot_w + 15
        out.append(f'<g class="legend-entry" data-solver={name}>'
                   f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" stroke-width="2"/>'
                   f'<text x="{lx + 30}" y="{ly + 4}">{escape(solver)}</text></g>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
