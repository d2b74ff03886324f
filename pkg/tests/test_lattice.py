import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latcover.criteria import z_decagon, z_hexagon, z_regular_4n
from latcover.errors import DomainError
from latcover.geom import ConvexPolygon, contains_point, gauge, gauge_many, regular, rotate, square
from latcover.lattice import (
    Certificate,
    covering_radius,
    covering_radius_doubly_symmetric,
    deep_hole,
    deep_hole_oracle,
    find_witness,
    has_covering_property,
    inradius_bound,
    lattice_neighbours,
    mirror_axis,
    placed_body,
    reduced_sweep_range,
    rotation_order,
    search_placements,
    steiner_bound,
    verify_witness,
)

from conftest import random_polygon


def naive_covering_radius(K, n=61):
    """Deep hole on a plain grid with a fixed 7x7 block of lattice points."""
    ts = np.linspace(0, 1, n)
    X = np.array([(a, b) for a in ts for b in ts])
    U = np.array([(i, j) for i in range(-3, 4) for j in range(-3, 4)], dtype=float)
    d = gauge_many(K, (X[:, None, :] - U[None, :, :]).reshape(-1, 2)).reshape(len(X), len(U))
    return float(d.min(axis=1).max())


class TestKnownRadii:
    def test_unit_square(self):
        # [-1/2, 1/2]^2 tiles with Z^2.
        assert deep_hole_oracle(square()) == pytest.approx(1.0, abs=1e-9)

    def test_diamond(self):
        K = ConvexPolygon([(1, 0), (0, 1), (-1, 0), (0, -1)])
        assert covering_radius_doubly_symmetric(K) == pytest.approx(1.0)
        assert deep_hole_oracle(K) == pytest.approx(1.0, abs=1e-6)

    def test_disc(self):
        # The 512-gon has a vertex on the diagonal, so its radius is sqrt(2)/2 exactly.
        assert deep_hole_oracle(regular(512)) == pytest.approx(math.sqrt(2) / 2, abs=1e-9)
        # Off the vertex directions the apothem is what matters.
        K = regular(512, 1.0, math.pi / 512)
        assert deep_hole_oracle(K) == pytest.approx(math.sqrt(2) / 2 / math.cos(math.pi / 512), abs=1e-9)

    def test_against_naive_grid(self, rng):
        for _ in range(3):
            K = random_polygon(rng, n_points=6, symmetric=True)
            assert deep_hole_oracle(K) == pytest.approx(naive_covering_radius(K), abs=0.01)

    def test_nonsymmetric_triangle(self):
        K = ConvexPolygon([(-0.5, -0.5), (1.0, -0.5), (-0.5, 1.0)])
        got = deep_hole_oracle(K)
        assert got == pytest.approx(naive_covering_radius(K), abs=0.01)
        # the deep hole sits at (1/3, 1/3) with radius 4/3
        assert got == pytest.approx(4 / 3, abs=1e-4)

    def test_grid_too_small(self):
        with pytest.raises(DomainError):
            deep_hole(square(), grid=4)


class TestNeighbours:
    def test_covers_unit_square(self):
        K = regular(6, 0.3)
        U = lattice_neighbours(K)
        # enough points that every corner of the cell has its nearest neighbour
        for corner in [(0, 0), (1, 1), (0.5, 0.5)]:
            assert min(gauge(K, np.subtract(corner, u)) for u in U) <= 1 / 0.3

    def test_widens_for_thin_bodies(self):
        K = ConvexPolygon([(-5, -0.05), (5, -0.05), (5, 0.05), (-5, 0.05)])
        U = lattice_neighbours(K)
        assert np.abs(U).max() > 3


class TestCertificates:
    def test_corner_for_doubly_symmetric(self):
        v = covering_radius(regular(6))
        assert v.certificate is Certificate.DOUBLY_SYMMETRIC_CORNER
        assert v.radius == pytest.approx(gauge(regular(6), (0.5, 0.5)))

    def test_corner_failure_has_witness(self):
        K = regular(10, 0.73)
        v = covering_radius(K)
        assert not v.covers and v.witness == (0.5, 0.5)
        assert verify_witness(K, 0.0, v.witness)

    def test_inradius_fires_for_octagon(self):
        K = regular(8, z_regular_4n(2), math.pi / 16)
        v = covering_radius(K)
        assert v.covers and v.certificate is Certificate.INRADIUS_BALL
        assert v.radius == pytest.approx(1.0, abs=1e-12)

    def test_steiner_certificate(self):
        K = regular(6, z_hexagon(), math.pi / 12)
        v = covering_radius(K)
        assert v.covers and v.certificate is Certificate.STEINER_SQUARE
        assert v.radius < 1

    def test_brute_force(self):
        K = ConvexPolygon([(-0.5, -0.5), (1.0, -0.5), (-0.5, 1.0)])
        v = covering_radius(K)
        assert v.certificate is Certificate.BRUTE_FORCE

    def test_bounds_are_sound(self, rng):
        for _ in range(10):
            K = random_polygon(rng, symmetric=True)
            c = deep_hole_oracle(K)
            assert c <= inradius_bound(K) + 1e-9
            assert c <= steiner_bound(K) + 1e-9

    def test_verdict_json(self):
        d = json.loads(covering_radius(regular(10, 0.73)).to_json())
        assert d["certificate"] == "DoublySymmetricCorner"
        assert d["witness"] == [0.5, 0.5]


class TestSymmetry:
    @pytest.mark.parametrize("n,theta,order", [(6, 0.0, 6), (6, 0.3, 6), (5, 0.1, 5), (4, 0.0, 4)])
    def test_rotation_order(self, n, theta, order):
        assert rotation_order(regular(n, 1.0, theta)) == order

    def test_generic_order(self, rng):
        assert rotation_order(random_polygon(rng, n_points=7)) == 1
        assert rotation_order(random_polygon(rng, symmetric=True)) == 2

    @pytest.mark.parametrize("n,hi", [(4, math.pi / 4), (6, math.pi / 12), (10, math.pi / 20), (8, math.pi / 8)])
    def test_reduced_range(self, n, hi):
        lo, top = reduced_sweep_range(regular(n))
        assert lo == 0.0 and top == pytest.approx(hi)

    def test_reduced_range_is_symmetric(self):
        K = regular(6)
        for a in (0.05, 0.1):
            r1 = deep_hole_oracle(rotate(K, a))
            r2 = deep_hole_oracle(rotate(K, -a))
            r3 = deep_hole_oracle(rotate(K, a + math.pi / 6))
            assert r1 == pytest.approx(r2, abs=1e-6)
            assert r1 == pytest.approx(r3, abs=1e-6)

    def test_mirror_axis_none(self, rng):
        K = ConvexPolygon([(0, -1), (2, 0), (0.3, 1.1), (-1, 0.2)])
        assert mirror_axis(K) is None


class TestWitness:
    def test_placed_body(self):
        B = placed_body(regular(3), math.pi, (0.5, 0.5))
        assert np.allclose(B.vertices[0], [1.5, 0.5])

    def test_sound(self):
        K = regular(6, 0.75)
        x = find_witness(K, 0.0)
        assert x is not None and verify_witness(K, 0.0, x)
        B = placed_body(K, 0.0, x)
        for i in range(-2, 3):
            for j in range(-2, 3):
                assert not contains_point(B, (i, j))

    def test_none_when_covering(self):
        assert find_witness(regular(6, 0.8), 0.1) is None

    def test_verify_rejects_touching(self):
        assert not verify_witness(square(), 0.0, (0.5, 0.5))
        assert verify_witness(square(0.49), 0.0, (0.5, 0.5))


class TestSweep:
    def test_hexagon_closed_form(self):
        rep = has_covering_property(regular(6, z_hexagon()), sweep_count=64)
        assert rep.max_radius == pytest.approx(1.0, abs=5e-3)
        assert rep.argmax_angle == pytest.approx(0.0, abs=1e-12)

    def test_decagon_closed_form(self):
        rep = has_covering_property(regular(10, z_decagon()), sweep_count=64)
        assert rep.max_radius == pytest.approx(1.0, abs=5e-3)

    def test_csv(self):
        rep = has_covering_property(regular(4), sweep_count=16, grid=32)
        lines = rep.to_csv().splitlines()
        assert lines[0] == "angle,radius" and len(lines) == 17
        assert float(lines[1].split(",")[0]) == rep.angles[0]

    def test_minimum_count(self):
        with pytest.raises(DomainError):
            has_covering_property(regular(4), sweep_count=8)


class TestPlacements:
    def test_finds_free_below_threshold(self):
        res = search_placements(regular(6, 0.95 * z_hexagon()), 20_000, rng=1, refine_top=5)
        assert res.free and verify_witness(regular(6, 0.95 * z_hexagon()), res.theta, res.x)

    def test_none_above_threshold(self):
        res = search_placements(regular(6, 1.05 * z_hexagon()), 20_000, rng=1, refine_top=5)
        assert not res.free and res.score < 1

    def test_deterministic(self):
        a = search_placements(regular(5, 0.7), 5000, rng=7)
        b = search_placements(regular(5, 0.7), 5000, rng=7)
        assert a == b


seeds = st.integers(0, 2 ** 32 - 1)


@settings(max_examples=15, deadline=None)
@given(seeds, st.floats(0.2, 5.0))
def test_scaling_law(seed, lam):
    rng = np.random.default_rng(seed)
    K = random_polygon(rng, n_points=8, symmetric=True)
    c = deep_hole_oracle(K, grid=48)
    assert deep_hole_oracle(K.scaled(lam), grid=48) == pytest.approx(c / lam, rel=1e-6)


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_translation_invariance(seed):
    # c(K + t) = c(K) as long as the origin stays interior.
    rng = np.random.default_rng(seed)
    K = random_polygon(rng, n_points=8, symmetric=True)
    t = rng.uniform(-0.1, 0.1, 2)
    if not K.translated(t).origin_interior:
        return
    assert deep_hole_oracle(K.translated(t), grid=64) == pytest.approx(deep_hole_oracle(K, grid=64), abs=2e-3)
