"""Covering radii with respect to the integer lattice.

``c(K)`` is the least ``lam`` with ``lam*K + Z^2 = R^2``.  Equivalently it is
the largest gauge distance from a point of the plane to its nearest lattice
point, the maximum being attained at a *deep hole*.  This module offers the
exact corner formula for bodies symmetric in both axes, two sufficient
certificates, a brute-force deep-hole search and the rotation sweep that
decides the lattice point covering property.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .geom import (
    EPS,
    ConvexPolygon,
    Point,
    contains_points,
    gauge,
    inradius,
    is_doubly_symmetric,
    rotate,
    rotation_matrix,
    same_vertex_set,
)
from .steiner import steiner_x1

HALF_DIAGONAL = math.sqrt(2.0) / 2.0
CORNER = (0.5, 0.5)


class Certificate(str, enum.Enum):
    DOUBLY_SYMMETRIC_CORNER = "DoublySymmetricCorner"
    INRADIUS_BALL = "InradiusBall"
    STEINER_SQUARE = "SteinerSquare"
    BRUTE_FORCE = "BruteForce"


@dataclass(frozen=True)
class CoveringVerdict:
    """Outcome of :func:`covering_radius`.

    ``radius`` is exact for the corner certificate, a rigorous upper bound
    for the ball and Steiner certificates, and the oracle's lower-bound
    estimate for the brute-force fallback.
    """

    covers: bool
    radius: float
    certificate: Certificate
    witness: Point | None = None

    def to_dict(self) -> dict:
        return {
            "covers": self.covers,
            "radius": self.radius,
            "certificate": self.certificate.value,
            "witness": None if self.witness is None else [self.witness.x, self.witness.y],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class SweepReport:
    angles: tuple
    radii: tuple
    max_radius: float
    argmax_angle: float
    rigorous: bool = field(default=False)

    @property
    def covers(self) -> bool:
        return self.max_radius <= 1.0 + EPS

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["angle", "radius"])
        for a, r in zip(self.angles, self.radii):
            w.writerow([f"{a:.17g}", f"{r:.17g}"])
        return buf.getvalue()


# ---------------------------------------------------------------------------
# exact and sufficient criteria
# ---------------------------------------------------------------------------

def covering_radius_doubly_symmetric(K: ConvexPolygon) -> float:
    """``c(K)`` for ``K`` symmetric in both axes: the gauge of ``(1/2, 1/2)``."""
    if not is_doubly_symmetric(K):
        raise DomainError("body is not symmetric with respect to both coordinate axes")
    return gauge(K, CORNER)


def inradius_bound(K: ConvexPolygon) -> float:
    """Upper bound on ``c(K)`` from the largest origin-centred disc in ``K``."""
    return HALF_DIAGONAL / inradius(K)


def steiner_bound(K: ConvexPolygon) -> float:
    """Upper bound on ``c(K)``: least ``lam`` with ``St1(lam*K)`` holding the unit square.

    Valid for origin-symmetric ``K``, whose symmetral is symmetric in both axes.
    """
    return gauge(steiner_x1(K).polygon, CORNER)


# ---------------------------------------------------------------------------
# brute-force deep-hole search
# ---------------------------------------------------------------------------

def _gauge_evaluator(K: ConvexPolygon):
    """Vectorised gauge of ``K``.

    Few edges: maximum of the facet forms.  Many edges: locate the edge by
    the polar angle of the argument, which keeps the cost logarithmic.
    """
    A = K.facets
    if len(A) <= 24:
        def ev(w):
            return np.max(w @ A.T, axis=-1)
        return ev

    v = K.vertices
    ang = np.arctan2(v[:, 1], v[:, 0])
    start = int(np.argmin(ang))
    ang = np.roll(ang, -start)
    A_rolled = np.roll(A, -start, axis=0)
    # Edge i joins vertex i to vertex i+1 and covers angles [ang_i, ang_{i+1}).
    ang_ext = np.concatenate([ang, [ang[0] + 2 * np.pi]])

    def ev(w):
        phi = np.arctan2(w[..., 1], w[..., 0])
        phi = np.where(phi < ang_ext[0], phi + 2 * np.pi, phi)
        idx = np.clip(np.searchsorted(ang_ext, phi, side="right") - 1, 0, len(A) - 1)
        a = A_rolled[idx]
        return np.maximum(np.einsum("...i,...i->...", w, a), 0.0)
    return ev


def lattice_neighbours(K: ConvexPolygon, box: tuple[int, int] = (-2, 3)) -> np.ndarray:
    """Lattice points that can be nearest (in gauge) to some point of ``[0,1]^2``.

    Starts from ``box x box`` and keeps only points within Euclidean reach
    ``R * g`` of the unit square, where ``R`` is the circumradius and ``g``
    bounds the gauge distance to the nearest cell corner.  The box is widened
    when a small body needs more.
    """
    v = K.vertices
    R = float(np.max(np.hypot(v[:, 0], v[:, 1])))
    corners = np.array([[0.5, 0.5], [-0.5, 0.5], [0.5, -0.5], [-0.5, -0.5]])
    reach = R * float(np.max(np.max(corners @ K.facets.T, axis=1))) + 1e-12
    lo = min(box[0], math.floor(-reach))
    hi = max(box[1], math.ceil(1 + reach))
    r = np.arange(lo, hi + 1)
    U = np.array([(i, j) for i in r for j in r], dtype=float)
    gap = np.hypot(np.maximum(np.maximum(-U[:, 0], U[:, 0] - 1), 0.0),
                   np.maximum(np.maximum(-U[:, 1], U[:, 1] - 1), 0.0))
    return U[gap <= reach]


def _nearest_distance(ev, X: np.ndarray, U: np.ndarray, chunk: int = 4096) -> np.ndarray:
    out = np.empty(len(X))
    for s in range(0, len(X), chunk):
        diff = X[s:s + chunk, None, :] - U[None, :, :]
        out[s:s + chunk] = ev(diff).min(axis=1)
    return out


def deep_hole(K: ConvexPolygon, grid: int = 128, refine_iters: int = 4,
              n_starts: int = 4) -> tuple[float, Point]:
    """Brute-force deep hole of ``K`` over the unit cell.

    Evaluates the nearest-lattice-point gauge distance on a ``grid x grid``
    lattice of the cell, then refines around the ``n_starts`` best samples
    with ``refine_iters`` rounds of a 9x9 local grid, shrinking the window by
    4 each round.  The value is a lower bound on ``c(K)``; the coarse pass
    alone is within ``h * sqrt(2)/2 / inradius`` of it for spacing ``h``.
    """
    if grid < 8:
        raise DomainError(f"grid must be at least 8, got {grid}")
    ev = _gauge_evaluator(K)
    U = lattice_neighbours(K)
    h = 1.0 / grid
    ticks = np.arange(grid) * h
    if K.is_origin_symmetric:
        # f(x) = f(-x) for symmetric bodies, so half the cell suffices.
        ys = ticks[: grid // 2 + 1]
    else:
        ys = ticks
    gx, gy = np.meshgrid(ticks, ys, indexing="ij")
    X = np.column_stack([gx.ravel(), gy.ravel()])
    vals = _nearest_distance(ev, X, U)

    order = np.argsort(vals)[::-1]
    starts = []
    for i in order:
        p = X[i]
        if all(np.max(np.abs(p - q)) > 2 * h for q in starts):
            starts.append(p)
        if len(starts) == n_starts:
            break

    best_val = float(vals[order[0]])
    best_pt = X[order[0]]
    offs = np.linspace(-1.0, 1.0, 9)
    ox, oy = np.meshgrid(offs, offs, indexing="ij")
    stencil = np.column_stack([ox.ravel(), oy.ravel()])
    for c in starts:
        w = h
        for _ in range(refine_iters):
            pts = c + w * stencil
            v = _nearest_distance(ev, pts, U)
            j = int(np.argmax(v))
            c = pts[j]
            if v[j] > best_val:
                best_val, best_pt = float(v[j]), c
            w /= 4.0
    x, y = np.mod(best_pt, 1.0)
    return best_val, Point(float(x), float(y))


def deep_hole_oracle(K: ConvexPolygon, grid: int = 128, refine_iters: int = 4) -> float:
    return deep_hole(K, grid, refine_iters)[0]


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------

def placed_body(K: ConvexPolygon, theta: float, x) -> ConvexPolygon:
    """The translate ``-o(K, theta) + x``."""
    return rotate(K, theta).negated().translated(x)


def verify_witness(K: ConvexPolygon, theta: float, x) -> bool:
    """True iff ``-o(K, theta) + x`` contains no lattice point.

    Exhaustive over the lattice points of the placed body's bounding box
    grown by one; membership is boundary inclusive, so touching counts.
    """
    B = placed_body(K, theta, x)
    lo = np.floor(B.vertices.min(axis=0)) - 1
    hi = np.ceil(B.vertices.max(axis=0)) + 1
    xs = np.arange(lo[0], hi[0] + 1)
    ys = np.arange(lo[1], hi[1] + 1)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    return not bool(np.any(contains_points(B, pts)))


def find_witness(K: ConvexPolygon, theta: float, grid: int = 128,
                 refine_iters: int = 4) -> Point | None:
    """A centre ``x`` with ``-o(K, theta) + x`` lattice-point free, or ``None``.

    Only verified witnesses are returned.
    """
    value, x = deep_hole(rotate(K, theta), grid, refine_iters)
    if value > 1.0 + EPS and verify_witness(K, theta, x):
        return x
    return None


# ---------------------------------------------------------------------------
# dispatcher
# ---------------------------------------------------------------------------

def covering_radius(K: ConvexPolygon, grid: int = 128, refine_iters: int = 4) -> CoveringVerdict:
    """Covering radius of ``K`` in its given orientation, with the certificate used.

    Order: corner gauge (exact, both-axes symmetric bodies), inradius ball,
    Steiner square, then the brute-force oracle.
    """
    if is_doubly_symmetric(K):
        r = gauge(K, CORNER)
        if r > 1.0 + EPS:
            # (1/2, 1/2) + Z^2 is left uncovered.
            x = Point(0.5, 0.5)
            if verify_witness(K, 0.0, x):
                return CoveringVerdict(False, r, Certificate.DOUBLY_SYMMETRIC_CORNER, x)
        return CoveringVerdict(True, r, Certificate.DOUBLY_SYMMETRIC_CORNER)

    r = inradius_bound(K)
    if r <= 1.0 + EPS:
        return CoveringVerdict(True, r, Certificate.INRADIUS_BALL)

    if K.is_origin_symmetric:
        r = steiner_bound(K)
        if r <= 1.0 + EPS:
            return CoveringVerdict(True, r, Certificate.STEINER_SQUARE)

    r, x = deep_hole(K, grid, refine_iters)
    if r > 1.0 + EPS and verify_witness(K, 0.0, x):
        return CoveringVerdict(False, r, Certificate.BRUTE_FORCE, x)
    return CoveringVerdict(True, r, Certificate.BRUTE_FORCE)


# ---------------------------------------------------------------------------
# rotation sweep
# ---------------------------------------------------------------------------

def rotation_order(K: ConvexPolygon, tol: float = 1e-7) -> int:
    """Largest ``m`` such that ``K`` is invariant under rotation by ``2*pi/m``."""
    n = len(K)
    for m in sorted((d for d in range(1, n + 1) if n % d == 0), reverse=True):
        if m > 1 and same_vertex_set(rotate(K, 2 * math.pi / m).vertices, K.vertices, tol):
            return m
    return 1


def mirror_axis(K: ConvexPolygon, order: int | None = None, tol: float = 1e-7) -> float | None:
    """Angle of a reflection axis of ``K`` through the origin, if any."""
    v = K.vertices
    n = len(v)
    order = order or rotation_order(K, tol)
    mids = 0.5 * (v + np.roll(v, -1, axis=0))
    # Axes repeat under the rotation group, so one fundamental slice suffices.
    for i in range(max(1, n // order)):
        for p in (v[i], mids[i]):
            phi = math.atan2(p[1], p[0])
            c, s = math.cos(2 * phi), math.sin(2 * phi)
            refl = v @ np.array([[c, s], [s, -c]]).T
            if same_vertex_set(refl, v, tol):
                return phi
    return None


def reduced_sweep_range(K: ConvexPolygon) -> tuple[float, float]:
    """Angle interval on which the covering radius of ``o(K, theta)`` must be swept.

    ``Z^2`` is invariant under quarter turns, so with rotational order ``m``
    the radius has period ``2*pi/lcm(m, 4)``.  A reflection axis at angle
    ``phi`` makes it symmetric about ``-phi``, halving the interval.
    """
    m = rotation_order(K)
    period = 2 * math.pi / math.lcm(m, 4)
    phi = mirror_axis(K, m)
    if phi is None:
        return 0.0, period
    start = math.fmod(-phi, period / 2)
    if start < 0:
        start += period / 2
    if start > period / 4:
        # Prefer the symmetric start closest to zero.
        start -= period / 2
    if abs(start) < 1e-12:
        start = 0.0
    return start, start + period / 2


def has_covering_property(K: ConvexPolygon, sweep_count: int = 256, grid: int = 128,
                          refine_iters: int = 4, angle_range=None) -> SweepReport:
    """Sweep ``c(o(K, theta))`` over the symmetry-reduced angle range.

    A maximum at most 1 asserts the lattice point covering property up to
    the sweep resolution; the check is numerical, not rigorous.
    """
    if sweep_count < 16:
        raise DomainError(f"sweep_count must be at least 16, got {sweep_count}")
    lo, hi = angle_range if angle_range is not None else reduced_sweep_range(K)
    angles = np.linspace(lo, hi, sweep_count)
    radii = [deep_hole_oracle(rotate(K, a), grid, refine_iters) for a in angles]
    j = int(np.argmax(radii))
    return SweepReport(tuple(float(a) for a in angles), tuple(float(r) for r in radii),
                       float(radii[j]), float(angles[j]))


def lattice_point_covering_radius(K: ConvexPolygon, sweep_count: int = 256, grid: int = 128,
                                  refine_iters: int = 4) -> float:
    """Oracle estimate of ``Z(K)``: by ``c(lam*K) = c(K)/lam`` it is the swept maximum."""
    return has_covering_property(K, sweep_count, grid, refine_iters).max_radius


# ---------------------------------------------------------------------------
# randomized placements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlacementResult:
    theta: float
    x: Point
    score: float
    free: bool


def _placement_scores(K: ConvexPolygon, ev, U, thetas, X) -> np.ndarray:
    """Nearest gauge distance of ``X`` to ``Z^2`` measured in ``o(K, theta)``."""
    c, s = np.cos(thetas), np.sin(thetas)
    diff = X[:, None, :] - U[None, :, :]
    # gauge_{o(K,t)}(w) = gauge_K(R(-t) w)
    w = np.stack([c[:, None] * diff[..., 0] + s[:, None] * diff[..., 1],
                  -s[:, None] * diff[..., 0] + c[:, None] * diff[..., 1]], axis=-1)
    return ev(w).min(axis=1)


def search_placements(K: ConvexPolygon, n_samples: int = 100_000, rng=None,
                      refine_top: int = 0, refine_iters: int = 14,
                      chunk: int = 20_000) -> PlacementResult:
    """Look for a rotation and translation leaving ``-o(K, theta) + x`` lattice-point free.

    Samples ``n_samples`` placements uniformly, then optionally polishes the
    ``refine_top`` best with a shrinking 5x5x5 local grid in ``(theta, x)``.
    A placement is reported free only after :func:`verify_witness` accepts it.
    """
    rng = np.random.default_rng(rng)
    ev = _gauge_evaluator(K)
    v = K.vertices
    R = float(np.max(np.hypot(v[:, 0], v[:, 1])))
    reach = R * HALF_DIAGONAL / inradius(K) + 1e-12
    r = np.arange(math.floor(-reach), math.ceil(1 + reach) + 1)
    U = np.array([(i, j) for i in r for j in r], dtype=float)
    gap = np.hypot(np.maximum(np.maximum(-U[:, 0], U[:, 0] - 1), 0.0),
                   np.maximum(np.maximum(-U[:, 1], U[:, 1] - 1), 0.0))
    U = U[gap <= reach]

    thetas = rng.uniform(0.0, 2 * math.pi, n_samples)
    X = rng.uniform(0.0, 1.0, (n_samples, 2))
    scores = np.concatenate([
        _placement_scores(K, ev, U, thetas[s:s + chunk], X[s:s + chunk])
        for s in range(0, n_samples, chunk)
    ])

    cands = [(float(scores[i]), float(thetas[i]), X[i]) for i in np.argsort(scores)[::-1][:max(refine_top, 1)]]
    best = cands[0]
    if refine_top:
        offs = np.linspace(-1.0, 1.0, 5)
        gt, gx, gy = np.meshgrid(offs, offs, offs, indexing="ij")
        stencil = np.column_stack([gt.ravel(), gx.ravel(), gy.ravel()])
        for score, th, x in cands:
            step = np.array([2 * math.pi / n_samples ** (1 / 3), 1 / n_samples ** (1 / 3),
                             1 / n_samples ** (1 / 3)])
            c = np.array([th, x[0], x[1]])
            for _ in range(refine_iters):
                pts = c + stencil * step
                pts[:, 1:] = np.mod(pts[:, 1:], 1.0)
                vals = _placement_scores(K, ev, U, pts[:, 0], pts[:, 1:])
                j = int(np.argmax(vals))
                if vals[j] >= score:
                    score, c = float(vals[j]), pts[j]
                    if score > best[0]:
                        best = (score, float(c[0]), c[1:].copy())
                step = step / 2
    score, th, x = best
    x = Point(float(x[0]), float(x[1]))
    free = score > 1.0 + EPS and verify_witness(K, th, x)
    return PlacementResult(th, x, score, free)
