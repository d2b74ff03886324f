"""Steiner symmetrization about the x-axis.

The chord-length function of a convex polygon is piecewise linear with
breakpoints only at vertex abscissae, so sampling it there and emitting the
pairs ``(x, +-chord/2)`` gives the symmetral exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geom import EPS, ConvexPolygon, prune_collinear


@dataclass(frozen=True)
class SymmetrizedPolygon:
    polygon: ConvexPolygon
    source_breakpoints: tuple


def chord_length(K: ConvexPolygon, x) -> np.ndarray | float:
    """Length of ``K`` intersected with the vertical line at ``x`` (0 outside)."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    P = K.vertices
    Q = np.roll(P, -1, axis=0)
    lo_x = np.minimum(P[:, 0], Q[:, 0])
    hi_x = np.maximum(P[:, 0], Q[:, 0])
    dx = Q[:, 0] - P[:, 0]
    vertical = np.abs(dx) <= EPS

    X = xs[:, None]
    span = (X >= lo_x - EPS) & (X <= hi_x + EPS)
    with np.errstate(divide="ignore", invalid="ignore"):
        frac = np.where(vertical, 0.0, (X - P[:, 0]) / dx)
    frac = np.clip(frac, 0.0, 1.0)
    y = P[:, 1] + frac * (Q[:, 1] - P[:, 1])
    # A vertical edge contributes both of its endpoints.
    y_alt = np.where(vertical, Q[:, 1], y)
    y_hi = np.where(span, np.maximum(y, y_alt), -np.inf).max(axis=1)
    y_lo = np.where(span, np.minimum(y, y_alt), np.inf).min(axis=1)
    out = np.where(np.isfinite(y_hi), np.maximum(y_hi - y_lo, 0.0), 0.0)
    return float(out[0]) if np.ndim(x) == 0 else out


def _merge_close(xs: np.ndarray, tol: float = EPS) -> np.ndarray:
    xs = np.sort(xs)
    keep = [xs[0]]
    for x in xs[1:]:
        if x - keep[-1] > tol:
            keep.append(x)
    return np.array(keep)


def _symmetric_polygon(xs: np.ndarray, half: np.ndarray) -> ConvexPolygon:
    """Polygon with vertices ``(x, -h)`` left to right then ``(x, h)`` back."""
    lower = [(x, -h) for x, h in zip(xs, half)]
    upper = [(x, h) for x, h in zip(xs[::-1], half[::-1])]
    pts = lower + upper
    # Zero-width ends collapse to one vertex.
    if half[-1] <= EPS:
        pts = lower[:-1] + [(xs[-1], 0.0)] + upper[1:]
    if half[0] <= EPS:
        pts = pts[1:-1] + [(xs[0], 0.0)]
    return ConvexPolygon(prune_collinear(np.array(pts)))


def steiner_x1(K: ConvexPolygon) -> SymmetrizedPolygon:
    """Steiner symmetral of ``K`` with respect to the line ``x2 = 0``."""
    if K.area <= EPS:
        raise DomainError(f"polygon area {K.area:.3g} is too small to symmetrize")
    xs = _merge_close(K.vertices[:, 0])
    half = 0.5 * np.asarray(chord_length(K, xs))
    return SymmetrizedPolygon(_symmetric_polygon(xs, half), tuple(float(x) for x in xs))


def regular_2n_range(n: int) -> float:
    """Largest rotation angle for which :func:`steiner_regular_2n` is validated."""
    return math.pi / (2 * n)


def steiner_regular_2n(n: int, theta: float, scale: float = 1.0,
                       fallback: bool = False) -> SymmetrizedPolygon:
    """Closed-form symmetral of ``scale * H_{2n}`` rotated by ``theta``.

    Breakpoints sit at the abscissae of the vertices at angles
    ``theta - 2k*pi/m`` and ``theta + 2k*pi/m`` (``m = 2n``).  Their
    half-chords are::

        sin((2k-1)pi/m) sin(2k pi/m) / sin((2k-1)pi/m + theta)
        sin(2k pi/m) sin((2k+1)pi/m) / sin((2k+1)pi/m - theta)

    respectively, and the rightmost vertex ``(cos theta, 0)`` has none.
    The listed ordering holds for ``0 <= theta <= pi/(2n)``, which covers
    the full rotation period of ``H_{2n}`` modulo the x-axis mirror.  Outside
    that range a :class:`DomainError` is raised unless ``fallback`` is set,
    in which case the general chord algorithm is used.
    """
    if n < 2:
        raise DomainError(f"need n >= 2 for a 2n-gon, got {n}")
    limit = regular_2n_range(n)
    if not (-EPS <= theta <= limit + EPS):
        if fallback:
            from .geom import regular
            return steiner_x1(regular(2 * n, scale, theta))
        raise DomainError(f"closed form validated for 0 <= theta <= {limit:.6g}, got {theta!r}")

    m = 2 * n
    xs = [math.cos(theta)]
    half = [0.0]
    k = 1
    while len(xs) < n:
        xs.append(math.cos(theta - 2 * k * math.pi / m))
        half.append(math.sin((2 * k - 1) * math.pi / m) * math.sin(2 * k * math.pi / m)
                    / math.sin((2 * k - 1) * math.pi / m + theta))
        if len(xs) == n:
            break
        xs.append(math.cos(theta + 2 * k * math.pi / m))
        half.append(math.sin(2 * k * math.pi / m) * math.sin((2 * k + 1) * math.pi / m)
                    / math.sin((2 * k + 1) * math.pi / m - theta))
        k += 1

    # The body is also symmetric in x, so mirror the right half.
    xs = np.array(xs) * scale
    half = np.array(half) * scale
    all_x = np.concatenate([xs, -xs])
    all_h = np.concatenate([half, half])
    order = np.argsort(all_x, kind="stable")
    all_x, all_h = all_x[order], all_h[order]
    # Coincident abscissae (a vertical edge) keep the full chord.
    merged_x, merged_h = [all_x[0]], [all_h[0]]
    for x, h in zip(all_x[1:], all_h[1:]):
        if x - merged_x[-1] <= EPS:
            merged_h[-1] = max(merged_h[-1], h)
        else:
            merged_x.append(x)
            merged_h.append(h)
    all_x, all_h = np.array(merged_x), np.array(merged_h)
    return SymmetrizedPolygon(_symmetric_polygon(all_x, all_h),
                              tuple(float(x) for x in all_x))
