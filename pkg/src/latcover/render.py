"""Figures: a hand-written SVG overlay and matplotlib report plots."""

from __future__ import annotations

import math

import numpy as np

from .geom import ConvexPolygon

PX_PER_UNIT = 100


def _path(K: ConvexPolygon) -> str:
    pts = " ".join(f"{x * PX_PER_UNIT:.3f},{-y * PX_PER_UNIT:.3f}" for x, y in K.vertices)
    return pts


def overlay_svg(body: ConvexPolygon, symmetral: ConvexPolygon, title: str = "") -> str:
    """SVG of ``body`` over its symmetral, with the lattice and the unit square.

    One lattice unit is 100 px; the view box is snapped outward to lattice lines.
    """
    pts = np.vstack([body.vertices, symmetral.vertices, [[-0.5, -0.5], [0.5, 0.5]]])
    lo = np.floor(pts.min(axis=0) - 0.25)
    hi = np.ceil(pts.max(axis=0) + 0.25)
    x0, y0 = lo
    x1, y1 = hi
    w = (x1 - x0) * PX_PER_UNIT
    h = (y1 - y0) * PX_PER_UNIT
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}" '
        f'viewBox="{x0 * PX_PER_UNIT:.0f} {-y1 * PX_PER_UNIT:.0f} {w:.0f} {h:.0f}">',
    ]
    if title:
        out.append(f"<title>{title}</title>")
    out.append('<g stroke="#cccccc" stroke-width="1">')
    for gx in range(int(x0), int(x1) + 1):
        out.append(f'<line x1="{gx * PX_PER_UNIT}" y1="{-y1 * PX_PER_UNIT:.0f}" '
                   f'x2="{gx * PX_PER_UNIT}" y2="{-y0 * PX_PER_UNIT:.0f}"/>')
    for gy in range(int(y0), int(y1) + 1):
        out.append(f'<line x1="{x0 * PX_PER_UNIT:.0f}" y1="{-gy * PX_PER_UNIT}" '
                   f'x2="{x1 * PX_PER_UNIT:.0f}" y2="{-gy * PX_PER_UNIT}"/>')
    out.append("</g>")
    out.append('<g fill="#555555">')
    for gx in range(int(x0), int(x1) + 1):
        for gy in range(int(y0), int(y1) + 1):
            out.append(f'<circle cx="{gx * PX_PER_UNIT}" cy="{-gy * PX_PER_UNIT}" r="3"/>')
    out.append("</g>")
    out.append('<rect x="-50" y="-50" width="100" height="100" fill="none" '
               'stroke="#888888" stroke-dasharray="6,4" stroke-width="1.5"/>')
    out.append(f'<polygon points="{_path(symmetral)}" fill="#d95f02" fill-opacity="0.25" '
               'stroke="#d95f02" stroke-width="2"/>')
    out.append(f'<polygon points="{_path(body)}" fill="none" stroke="#1b9e77" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_sweep(report, path, label: str = "", reference: float | None = 1.0) -> None:
    """Covering radius against rotation angle (degrees), saved to ``path``."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    deg = np.degrees(report.angles)
    ax.plot(deg, report.radii, lw=1.5, color="#1b9e77", label=label or None)
    if reference is not None:
        ax.axhline(reference, color="#888888", lw=1, ls="--")
    ax.plot([math.degrees(report.argmax_angle)], [report.max_radius], "o", color="#d95f02", ms=4)
    ax.set_xlabel("rotation angle (deg)")
    ax.set_ylabel("covering radius")
    if label:
        ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_overlay(body: ConvexPolygon, symmetral: ConvexPolygon, path) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    pts = np.vstack([body.vertices, symmetral.vertices])
    lo = np.floor(pts.min(axis=0) - 0.25)
    hi = np.ceil(pts.max(axis=0) + 0.25)
    gx, gy = np.meshgrid(np.arange(lo[0], hi[0] + 1), np.arange(lo[1], hi[1] + 1))
    ax.plot(gx.ravel(), gy.ravel(), ".", color="#555555", ms=4)
    for K, color, fill in ((symmetral, "#d95f02", True), (body, "#1b9e77", False)):
        v = np.vstack([K.vertices, K.vertices[:1]])
        ax.plot(v[:, 0], v[:, 1], color=color, lw=1.5)
        if fill:
            ax.fill(v[:, 0], v[:, 1], color=color, alpha=0.2)
    sq = np.array([[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5], [-0.5, -0.5]])
    ax.plot(sq[:, 0], sq[:, 1], ls="--", color="#888888", lw=1)
    ax.set_aspect("equal")
    ax.set_xlim(lo[0], hi[0])
    ax.set_ylim(lo[1], hi[1])
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_margins(reports, path) -> None:
    """Bar chart of the worst margins of the inequality suite (log scale)."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 3.2))
    ids = [r.proposition_id for r in reports]
    vals = [max(r.worst_margin, 1e-18) for r in reports]
    colors = ["#1b9e77" if r.passed else "#d95f02" for r in reports]
    ax.bar(ids, vals, color=colors)
    ax.set_yscale("log")
    ax.set_ylabel("worst margin")
    ax.tick_params(axis="x", rotation=45)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
