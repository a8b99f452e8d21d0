"""SVG scatter plots of 2-d clusterings with optional granular-ball overlay.

Points are drawn as small squares and balls as ``<circle>`` outlines, so the
number of circle elements equals the number of balls drawn.
"""
from __future__ import annotations

from typing import Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
)


def color_for(label: int) -> str:
    if label < 0:
        return "#000000"
    return PALETTE[label % len(PALETTE)]


def render_svg(
    points: np.ndarray,
    labels: Sequence[int],
    balls=None,
    ball_labels: Optional[Sequence[int]] = None,
    size: int = 600,
    margin: int = 20,
    title: str = "",
) -> str:
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("only 2-d data can be plotted")
    lo = pts.min(axis=0)
    span = float((pts.max(axis=0) - lo).max()) or 1.0
    scale = (size - 2 * margin) / span

    def xy(p):
        # flip y so larger values are drawn higher
        return margin + (p[0] - lo[0]) * scale, size - margin - (p[1] - lo[1]) * scale

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    if title:
        out.append(f'<title>{escape(title)}</title>')
    out.append('<g id="points">')
    for p, lab in zip(pts, labels):
        x, y = xy(p)
        out.append(
            f'<rect x="{x - 1.5:.2f}" y="{y - 1.5:.2f}" width="3" height="3" fill="{color_for(int(lab))}"/>'
        )
    out.append("</g>")
    if balls is not None:
        out.append('<g id="balls" fill="none" stroke-width="1">')
        for j, b in enumerate(balls):
            x, y = xy(b.center)
            lab = int(ball_labels[j]) if ball_labels is not None else 0
            out.append(
                f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{b.radius * scale:.2f}" stroke="{color_for(lab)}"/>'
            )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
