"""Convex polygon kernel.

Polygons are immutable counterclockwise vertex chains.  Everything in the
package is expressed in lattice units, so a single absolute tolerance
``EPS`` is used for every boundary-inclusive predicate.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np
from scipy.spatial import ConvexHull

from .errors import ConstraintError, DomainError

EPS = 1e-9


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class RegularPolygonSpec:
    """Generator for ``scale * H_n`` rotated counterclockwise by ``theta``."""

    n: int
    scale: float = 1.0
    theta: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise ConstraintError(f"regular polygon needs n >= 3, got {self.n!r}")
        if not (math.isfinite(self.scale) and self.scale > 0):
            raise ConstraintError(f"scale must be a positive finite number, got {self.scale!r}")
        if not math.isfinite(self.theta):
            raise ConstraintError(f"theta must be finite, got {self.theta!r}")


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def _turn_heights(v: np.ndarray) -> np.ndarray:
    """Signed distance of each vertex from the chord joining its neighbours."""
    prev = np.roll(v, 1, axis=0)
    nxt = np.roll(v, -1, axis=0)
    chord = nxt - prev
    norm = np.hypot(chord[:, 0], chord[:, 1])
    with np.errstate(divide="ignore", invalid="ignore"):
        return _cross(v - prev, nxt - v) / norm


class ConvexPolygon:
    """A strictly convex polygon given by counterclockwise vertices.

    Construction validates the chain: at least three finite, distinct
    vertices, each one turning left by more than ``EPS`` (measured as its
    distance from the segment joining its neighbours).  Collinear chains are
    rejected, never merged; use :meth:`from_points` to build a polygon from
    an arbitrary point cloud.
    """

    def __init__(self, vertices: Iterable):
        v = np.array(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise ConstraintError("vertices must be a sequence of (x, y) pairs")
        if len(v) < 3:
            raise ConstraintError(f"a polygon needs at least 3 vertices, got {len(v)}")
        if not np.all(np.isfinite(v)):
            raise ConstraintError("vertex coordinates must be finite")
        edges = np.roll(v, -1, axis=0) - v
        if np.any(np.hypot(edges[:, 0], edges[:, 1]) <= EPS):
            raise ConstraintError("duplicate consecutive vertices")
        heights = _turn_heights(v)
        if not np.all(heights > EPS):
            bad = int(np.argmin(heights))
            raise ConstraintError(
                f"vertex chain is not strictly convex counterclockwise at index {bad} "
                f"(turn height {heights[bad]:.3g})"
            )
        # A locally convex chain can still wind around more than once.
        turning = np.arctan2(_cross(edges, np.roll(edges, -1, axis=0)),
                             np.einsum("ij,ij->i", edges, np.roll(edges, -1, axis=0)))
        if abs(turning.sum() - 2 * math.pi) > 1e-6:
            raise ConstraintError("vertex chain winds more than once")
        v.setflags(write=False)
        self._v = v

    @classmethod
    def from_points(cls, points: Iterable) -> "ConvexPolygon":
        """Convex hull of ``points``, with near-collinear hull vertices dropped."""
        pts = np.asarray(points, dtype=float)
        try:
            hull = ConvexHull(pts)
        except Exception as exc:  # qhull raises its own error type
            raise ConstraintError(f"degenerate point set: {exc}") from None
        return cls(prune_collinear(pts[hull.vertices]))

    @property
    def vertices(self) -> np.ndarray:
        return self._v

    def __len__(self):
        return len(self._v)

    def __repr__(self):
        return f"ConvexPolygon({len(self._v)} vertices)"

    @cached_property
    def area(self) -> float:
        v = self._v
        return 0.5 * float(np.sum(_cross(v, np.roll(v, -1, axis=0))))

    @cached_property
    def facets(self) -> np.ndarray:
        """Rows ``a_i`` with ``K = {x : a_i . x <= 1}``; needs the origin inside."""
        if not self.origin_interior:
            raise DomainError("gauge needs the origin strictly inside the polygon")
        v = self._v
        e = np.roll(v, -1, axis=0) - v
        normals = np.column_stack([e[:, 1], -e[:, 0]])
        offsets = np.einsum("ij,ij->i", normals, v)
        a = normals / offsets[:, None]
        a.setflags(write=False)
        return a

    @cached_property
    def edge_distances(self) -> np.ndarray:
        """Signed distance from the origin to each edge's supporting line."""
        v = self._v
        e = np.roll(v, -1, axis=0) - v
        return _cross(e, -v) / np.hypot(e[:, 0], e[:, 1])

    @cached_property
    def origin_interior(self) -> bool:
        return bool(np.all(self.edge_distances > EPS))

    @cached_property
    def is_origin_symmetric(self) -> bool:
        return same_vertex_set(self._v, -self._v)

    def transformed(self, matrix) -> "ConvexPolygon":
        m = np.asarray(matrix, dtype=float)
        out = self._v @ m.T
        if np.linalg.det(m) < 0:
            out = out[::-1]
        return ConvexPolygon(out)

    def scaled(self, factor: float) -> "ConvexPolygon":
        if not factor > 0:
            raise ConstraintError("scale factor must be positive")
        return ConvexPolygon(self._v * factor)

    def translated(self, offset) -> "ConvexPolygon":
        return ConvexPolygon(self._v + np.asarray(offset, dtype=float))

    def negated(self) -> "ConvexPolygon":
        return ConvexPolygon(-self._v)


def prune_collinear(v: np.ndarray, tol: float = EPS) -> np.ndarray:
    """Drop vertices that sit within ``tol`` of the chord of their neighbours,
    and consecutive duplicates."""
    v = np.asarray(v, dtype=float)
    changed = True
    while changed and len(v) > 3:
        changed = False
        e = np.roll(v, -1, axis=0) - v
        dup = np.hypot(e[:, 0], e[:, 1]) <= tol
        if dup.any():
            v = v[~dup]
            changed = True
            continue
        h = _turn_heights(v)
        worst = int(np.argmin(h))
        if h[worst] <= tol:
            v = np.delete(v, worst, axis=0)
            changed = True
    return v


def same_vertex_set(a, b, tol: float = EPS) -> bool:
    """True if the two vertex arrays agree as sets within ``tol``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        return False
    d = np.hypot(a[:, None, 0] - b[None, :, 0], a[:, None, 1] - b[None, :, 1])
    return bool(np.all(d.min(axis=1) <= tol) and np.all(d.min(axis=0) <= tol))


def rotation_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def make_regular(spec: RegularPolygonSpec) -> ConvexPolygon:
    """``spec.scale * H_n`` rotated by ``spec.theta``; vertex k at angle 2k*pi/n + theta."""
    k = np.arange(spec.n)
    ang = 2.0 * np.pi * k / spec.n + spec.theta
    return ConvexPolygon(spec.scale * np.column_stack([np.cos(ang), np.sin(ang)]))


def regular(n: int, scale: float = 1.0, theta: float = 0.0) -> ConvexPolygon:
    return make_regular(RegularPolygonSpec(n, scale, theta))


def square(half: float = 0.5) -> ConvexPolygon:
    """The axis-parallel square ``[-half, half]^2``."""
    return ConvexPolygon([[half, -half], [half, half], [-half, half], [-half, -half]])


def rotate(K: ConvexPolygon, theta: float) -> ConvexPolygon:
    return ConvexPolygon(K.vertices @ rotation_matrix(theta).T)


def rotate_point(p, theta: float) -> Point:
    x, y = rotation_matrix(theta) @ np.asarray(p, dtype=float)
    return Point(float(x), float(y))


def gauge(K: ConvexPolygon, v) -> float:
    """Minkowski gauge ``min{t > 0 : v in tK}`` by ray-edge intersection."""
    if not K.origin_interior:
        raise DomainError("gauge needs the origin strictly inside the polygon")
    vx, vy = float(v[0]), float(v[1])
    if vx == 0.0 and vy == 0.0:
        return 0.0
    P = K.vertices
    Q = np.roll(P, -1, axis=0)
    # The ray lies between p_i and p_{i+1} angularly.
    left = P[:, 0] * vy - P[:, 1] * vx
    right = vx * Q[:, 1] - vy * Q[:, 0]
    hit = np.flatnonzero((left >= 0) & (right >= 0))
    if len(hit):
        i = int(hit[0])
    else:
        # Rounding can leave the ray a hair outside every wedge.
        i = int(np.argmax(np.minimum(left, right)))
    e = Q[i] - P[i]
    nx, ny = e[1], -e[0]
    return float((nx * vx + ny * vy) / (nx * P[i, 0] + ny * P[i, 1]))


def gauge_many(K: ConvexPolygon, pts) -> np.ndarray:
    """Vectorised gauge through the facet form ``max_i a_i . v``."""
    pts = np.asarray(pts, dtype=float)
    return np.max(pts @ K.facets.T, axis=-1)


def contains_points(K: ConvexPolygon, pts, tol: float = EPS) -> np.ndarray:
    pts = np.asarray(pts, dtype=float)
    P = K.vertices
    e = np.roll(P, -1, axis=0) - P
    length = np.hypot(e[:, 0], e[:, 1])
    rel = pts[..., None, :] - P
    dist = (e[:, 0] * rel[..., 1] - e[:, 1] * rel[..., 0]) / length
    return np.all(dist >= -tol, axis=-1)


def contains_point(K: ConvexPolygon, p, tol: float = EPS) -> bool:
    """Closed-region membership, boundary inclusive up to ``tol``."""
    return bool(contains_points(K, np.asarray(p, dtype=float)[None, :], tol)[0])


def contains_polygon(K: ConvexPolygon, L: ConvexPolygon, tol: float = EPS) -> bool:
    # Convexity: L is inside K iff its vertices are.
    return bool(np.all(contains_points(K, L.vertices, tol)))


def inradius(K: ConvexPolygon) -> float:
    """Radius of the largest origin-centred disc inside ``K``."""
    if not K.origin_interior:
        raise DomainError("inradius is measured from the origin, which must be interior")
    return float(K.edge_distances.min())


def mirror_diag(K: ConvexPolygon) -> ConvexPolygon:
    """Reflection across the line ``y = x``."""
    return ConvexPolygon(K.vertices[::-1, ::-1])


def is_doubly_symmetric(K: ConvexPolygon, tol: float = EPS) -> bool:
    """Symmetric with respect to both coordinate axes."""
    v = K.vertices
    return same_vertex_set(v, v * [1.0, -1.0], tol) and same_vertex_set(v, v * [-1.0, 1.0], tol)


def polygon_to_dict(K: ConvexPolygon) -> dict:
    return {"vertices": K.vertices.tolist()}


def polygon_from_dict(data: dict) -> ConvexPolygon:
    try:
        verts = data["vertices"]
    except (TypeError, KeyError):
        raise ConstraintError('polygon JSON needs a "vertices" list') from None
    return ConvexPolygon(verts)


def load_polygon(path) -> ConvexPolygon:
    with open(Path(path)) as fh:
        return polygon_from_dict(json.load(fh))


def save_polygon(K: ConvexPolygon, path) -> None:
    with open(Path(path), "w") as fh:
        json.dump(polygon_to_dict(K), fh)
        fh.write("\n")
