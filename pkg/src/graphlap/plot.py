"""Dependency-free SVG scatter plots of 1-D and 2-D embeddings."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import PlotDimension

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]

WIDTH = 480
HEIGHT = 360
MARGIN = 30


def _scale(v: np.ndarray, lo: float, hi: float) -> np.ndarray:
    vmin, vmax = float(v.min()), float(v.max())
    if vmax == vmin:
        return np.full(v.shape, 0.5 * (lo + hi))
    return lo + (v - vmin) / (vmax - vmin) * (hi - lo)


def scatter_svg(coords, labels=None) -> str:
    """SVG source for an ``(m, N)`` coordinate matrix with ``m`` in {1, 2}.

    One-dimensional embeddings are drawn along a horizontal axis.
    """
    C = np.atleast_2d(np.asarray(coords, dtype=float))
    m, n = C.shape
    if n == 0:
        raise PlotDimension("nothing to plot: embedding is empty")
    if m not in (1, 2):
        raise PlotDimension(f"can only plot 1 or 2 dimensions, got {m}")
    xs = _scale(C[0], MARGIN, WIDTH - MARGIN)
    if m == 1:
        ys = np.full(n, HEIGHT / 2.0)
    else:
        # SVG y grows downward
        ys = _scale(-C[1], MARGIN, HEIGHT - MARGIN)
    if labels is None:
        colors = [PALETTE[0]] * n
    else:
        labels = np.asarray(labels)
        if labels.shape != (n,):
            raise PlotDimension(f"got {labels.shape[0]} labels for {n} points")
        _, idx = np.unique(labels, return_inverse=True)
        colors = [PALETTE[k % len(PALETTE)] for k in idx]

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if m == 1:
        y = HEIGHT / 2.0
        out.append(f'<line x1="{MARGIN}" y1="{y:.2f}" x2="{WIDTH - MARGIN}" y2="{y:.2f}" stroke="#999"/>')
    else:
        out.append(
            f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" '
            f'height="{HEIGHT - 2 * MARGIN}" fill="none" stroke="#999"/>'
        )
    for i, (x, y, col) in enumerate(zip(xs, ys, colors)):
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="4" fill="{col}"><title>{i}</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_scatter_svg(coords, labels=None, path="embedding.svg") -> Path:
    """Write :func:`scatter_svg` output to ``path``; nothing is written on error."""
    source = getattr(coords, "coords", coords)
    text = scatter_svg(source, labels)
    path = Path(path)
    path.write_text(text)
    return path
