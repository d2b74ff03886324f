"""Closed-form covering criteria and the proof functions behind them.

Covers the classic criteria for ellipses, triangles and parallelograms,
the lattice point covering radii of the regular 4n-gons, the hexagon and
the decagon, the diagonal-intersection functions used to establish those
radii, and a grid verification of the supporting trigonometric inequalities.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConstraintError, DomainError
from .geom import EPS, ConvexPolygon

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
PI = math.pi

# Case boundary of the hexagon analysis: below it the diagonal meets the edge
# leaving (cos theta, 0), above it the next edge.
HEX_SWITCH = math.asin(3 ** 0.25 / 2) - PI / 6

FORM_TOL = 1e-12
IMPLICIT_TOL = 1e-10


# ---------------------------------------------------------------------------
# classic criteria
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EllipsoidSpec:
    semi_axes: tuple

    def __post_init__(self):
        axes = tuple(float(a) for a in self.semi_axes)
        if not axes or not all(math.isfinite(a) and a > 0 for a in axes):
            raise ConstraintError("semi-axes must be a non-empty list of positive numbers")
        object.__setattr__(self, "semi_axes", axes)


@dataclass(frozen=True)
class TriangleSpec:
    """Side lengths, sorted on construction so that ``a <= b <= c``."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        a, b, c = sorted(float(s) for s in (self.a, self.b, self.c))
        if not a > 0:
            raise ConstraintError("side lengths must be positive")
        if not a + b > c:
            raise ConstraintError(f"sides {a}, {b}, {c} violate the triangle inequality")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def area(self) -> float:
        a, b, c = self.a, self.b, self.c
        # Heron, in the cancellation-safe ordering for a <= b <= c.
        return 0.25 * math.sqrt((c + (b + a)) * (a - (c - b)) * (a + (c - b)) * (c + (b - a)))


@dataclass(frozen=True)
class ParallelogramSpec:
    """Widths ``a <= b`` between the two pairs of opposite sides, acute angle ``gamma``."""

    a: float
    b: float
    gamma: float

    def __post_init__(self):
        if not (0 < self.a <= self.b):
            raise ConstraintError(f"need 0 < a <= b, got a={self.a}, b={self.b}")
        if not (0 < self.gamma <= PI / 2 + EPS):
            raise ConstraintError(f"need 0 < gamma <= pi/2, got {self.gamma}")


def ellipsoid_covers(e: EllipsoidSpec) -> bool:
    return sum(1.0 / a ** 2 for a in e.semi_axes) <= 4.0


def triangle_covers(t: TriangleSpec) -> bool:
    c = t.c
    if c <= 1.0:
        return False
    return 2.0 * t.area * (c - 1.0) >= c * c


def parallelogram_covers(p: ParallelogramSpec) -> bool:
    if p.a < 1.0:
        return False
    if p.b >= SQRT2:
        return True
    alpha = math.acos(min(p.a / SQRT2, 1.0))
    beta = math.acos(min(p.b / SQRT2, 1.0))
    return alpha + beta + p.gamma <= PI / 2


def threshold_scale(covers: Callable[[float], bool], lo: float, hi: float,
                    tol: float = 1e-12) -> float:
    """Bisect the least scale at which a monotone criterion switches to True."""
    if covers(lo) or not covers(hi):
        raise DomainError("criterion must be False at lo and True at hi")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if covers(mid):
            hi = mid
        else:
            lo = mid
    return hi


def triangle_polygon(t: TriangleSpec) -> ConvexPolygon:
    """The triangle with longest side on the x-axis, centroid at the origin."""
    cx = (t.b ** 2 + t.c ** 2 - t.a ** 2) / (2 * t.c)
    cy = math.sqrt(max(t.b ** 2 - cx ** 2, 0.0))
    v = np.array([[0.0, 0.0], [t.c, 0.0], [cx, cy]])
    return ConvexPolygon(v - v.mean(axis=0))


def parallelogram_polygon(p: ParallelogramSpec) -> ConvexPolygon:
    """Centred parallelogram with the requested widths and angle."""
    s, c = math.sin(p.gamma), math.cos(p.gamma)
    long_side = p.b / s   # the sides at distance a from each other
    short_side = p.a / s
    v = np.array([[0.0, 0.0], [long_side, 0.0],
                  [long_side + short_side * c, short_side * s], [short_side * c, short_side * s]])
    return ConvexPolygon(v - v.mean(axis=0))


def ellipse_polygon(e: EllipsoidSpec, n: int = 512) -> ConvexPolygon:
    """Inscribed ``n``-gon of a planar ellipse."""
    if len(e.semi_axes) != 2:
        raise DomainError("only planar ellipses can be polygonised")
    a, b = e.semi_axes
    t = 2 * PI * np.arange(n) / n
    return ConvexPolygon(np.column_stack([a * np.cos(t), b * np.sin(t)]))


# ---------------------------------------------------------------------------
# regular polygons
# ---------------------------------------------------------------------------

def z_regular_4n(n: int) -> float:
    """Lattice point covering radius of ``H_{4n}``: the scale where its apothem is sqrt(2)/2."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return (SQRT2 / 2) / math.cos(PI / (4 * n))


def _check_range(theta, lo, hi, name):
    th = np.asarray(theta, dtype=float)
    if np.any(th < lo - EPS) or np.any(th > hi + EPS):
        raise DomainError(f"{name} is defined for {lo:.6g} <= theta <= {hi:.6g}")
    return th


def _agree(a, b, tol, name):
    err = np.max(np.abs(np.asarray(a) - np.asarray(b)))
    if err > tol:
        raise ArithmeticError(f"{name}: defining and simplified forms differ by {err:.3g}")


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def s_theta(theta):
    """Diagonal intersection ``s`` of the symmetral of the rotated hexagon, first case."""
    th = _check_range(theta, 0.0, HEX_SWITCH, "s_theta")
    u = np.sin(th + PI / 6)
    defining = (math.sin(PI / 3) * np.cos(th)
                / (math.sin(PI / 3) - 2 * u ** 2 + 2 * np.cos(th) * u))
    simplified = SQRT3 * np.cos(th) / (-3 + SQRT3 + 4 * np.cos(th) ** 2)
    _agree(defining, simplified, FORM_TOL, "s_theta")
    return _scalar(defining)


def t_theta_hex(theta):
    """Diagonal intersection ``t`` of the symmetral of the rotated hexagon, second case."""
    th = _check_range(theta, HEX_SWITCH, PI / 6, "t_theta_hex")
    defining = ((2 * SQRT3 * np.sin(th + PI / 6) + SQRT3 * np.cos(th + PI / 3))
                / (4 * np.cos(th) * np.sin(th + PI / 6) + SQRT3))
    v = np.sin(th + PI / 3)
    simplified = 3 * v / (4 * v ** 2 + SQRT3 - 1)
    _agree(defining, simplified, FORM_TOL, "t_theta_hex")
    return _scalar(defining)


def decagon_implicit_residual(theta, t):
    """Residual of the slope relation fixing the decagon's diagonal intersection."""
    th = np.asarray(theta, dtype=float)
    h_lo = math.sin(3 * PI / 10) * math.sin(2 * PI / 5) / np.sin(3 * PI / 10 + th)
    x_lo = np.cos(th - 2 * PI / 5)
    h_hi = math.sin(PI / 5) * math.sin(3 * PI / 10) / np.sin(3 * PI / 10 - th)
    x_hi = np.cos(th + PI / 5)
    return (t - h_lo) / (t - x_lo) - (h_hi - h_lo) / (x_hi - x_lo)


def t_theta_dec(theta):
    """Diagonal intersection ``t`` of the symmetral of the rotated decagon."""
    th = _check_range(theta, 0.0, PI / 20, "t_theta_dec")
    t = (2 * math.sin(3 * PI / 10) * math.cos(PI / 10) * np.cos(th)
         / (2 * np.cos(th) ** 2 + math.sin(3 * PI / 5) - math.cos(3 * PI / 5) - 1))
    res = np.max(np.abs(decagon_implicit_residual(th, t)))
    if res > IMPLICIT_TOL:
        raise ArithmeticError(f"t_theta_dec: implicit relation residual {res:.3g}")
    return _scalar(t)


def z_hexagon() -> float:
    """``Z(H_6) = 1/(2 s(0)) = (3 + sqrt 3)/6``."""
    return 1.0 / (2.0 * s_theta(0.0))


def z_decagon() -> float:
    """``Z(H_10) = 1/(2 t(0))``."""
    return 1.0 / (2.0 * t_theta_dec(0.0))


def z_closed_form(m: int) -> float | None:
    """Closed-form ``Z(H_m)`` where one is known, else ``None``."""
    if m % 4 == 0:
        return z_regular_4n(m // 4)
    if m == 6:
        return z_hexagon()
    if m == 10:
        return z_decagon()
    return None


# ---------------------------------------------------------------------------
# inequality suite
# ---------------------------------------------------------------------------

PROPOSITION_IDS = ("A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A2mono", "A3mono", "A4mono")


@dataclass(frozen=True)
class InequalityReport:
    proposition_id: str
    grid_size: int
    worst_margin: float
    passed: bool
    interval: tuple


def _grid(lo, hi, n, drop=None):
    """``n`` points on ``[lo, hi]``; ``drop`` removes the equality anchor at one end."""
    if drop == "lo":
        return np.linspace(lo, hi, n + 1)[1:]
    if drop == "hi":
        return np.linspace(lo, hi, n + 1)[:-1]
    return np.linspace(lo, hi, n)


def _margins():
    p = PI
    yield "A1", (0.0, p / 12), lambda th: SQRT3 / (2 * np.cos(th)) - np.cos(th + p / 3), None
    # A2-A4 compare against an endpoint value, where the margin is zero by
    # definition; that endpoint is left out.
    yield "A2", (0.0, HEX_SWITCH), lambda th: s_theta(th) - s_theta(0.0), "lo"
    yield "A3", (HEX_SWITCH, p / 6), lambda th: t_theta_hex(th) - t_theta_hex(p / 6), "hi"
    yield "A4", (0.0, p / 20), lambda th: t_theta_dec(th) - t_theta_dec(0.0), "lo"
    yield "A5", (0.0, p / 20), lambda th: (
        np.cos(th - p / 5) - math.sin(p / 10) * math.sin(p / 5) / np.sin(p / 10 + th)), None
    yield "A6", (0.0, p / 20), lambda th: (
        np.cos(th + p / 5) - math.sin(p / 5) * math.sin(3 * p / 10) / np.sin(3 * p / 10 - th)), None
    yield "A7", (0.0, p / 20), lambda th: (
        math.sin(3 * p / 10) * math.sin(2 * p / 5) / np.sin(3 * p / 10 + th) - np.cos(th - 2 * p / 5)), None
    yield "A8", (0.0, p / 20), lambda th: math.sin(2 * p / 5) / np.cos(th) - np.cos(th + 2 * p / 5), None


def _monotone():
    # Sign +1 for increasing, -1 for decreasing.
    yield "A2mono", (0.0, HEX_SWITCH), s_theta, +1
    yield "A3mono", (HEX_SWITCH, PI / 6), t_theta_hex, -1
    yield "A4mono", (0.0, PI / 20), t_theta_dec, +1


def verify_appendix(grid_size: int = 10_000) -> list[InequalityReport]:
    """Worst signed margin of every supporting inequality on a uniform grid.

    The monotonicity entries report the smallest step-to-step change in the
    claimed direction; a positive value means strict monotonicity at every
    grid step.
    """
    if grid_size < 100:
        raise DomainError(f"grid_size must be at least 100, got {grid_size}")
    out = []
    for pid, (lo, hi), margin, drop in _margins():
        m = float(np.min(margin(_grid(lo, hi, grid_size, drop))))
        out.append(InequalityReport(pid, grid_size, m, m > 0, (lo, hi)))
    for pid, (lo, hi), f, sign in _monotone():
        vals = np.asarray(f(_grid(lo, hi, grid_size)))
        m = float(np.min(sign * np.diff(vals)))
        out.append(InequalityReport(pid, grid_size, m, m > 0, (lo, hi)))
    return out


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["proposition_id", "grid_size", "worst_margin", "passed"])
    for r in reports:
        w.writerow([r.proposition_id, r.grid_size, f"{r.worst_margin:.17g}", str(r.passed).lower()])
    return buf.getvalue()
