"""Worked examples with known answers, one per documented input."""

import math

import numpy as np
import pytest

from latcover.criteria import (
    EllipsoidSpec,
    ParallelogramSpec,
    TriangleSpec,
    ellipsoid_covers,
    parallelogram_covers,
    s_theta,
    t_theta_dec,
    t_theta_hex,
    triangle_covers,
    z_hexagon,
    z_regular_4n,
)
from latcover.geom import ConvexPolygon, regular, rotate, same_vertex_set, square
from latcover.lattice import (
    Certificate,
    covering_radius,
    covering_radius_doubly_symmetric,
    deep_hole_oracle,
    find_witness,
    has_covering_property,
    verify_witness,
)
from latcover.steiner import chord_length, steiner_regular_2n, steiner_x1

PI = math.pi
S0 = math.sqrt(3) / (math.sqrt(3) + 1)


def has_vertex(K, p, tol=1e-12):
    return bool(np.min(np.hypot(*(K.vertices - np.asarray(p)).T)) <= tol)


class TestSteinerExamples:
    def test_shifted_square_recentres(self):
        S = steiner_x1(square().translated((0, 10))).polygon
        assert same_vertex_set(S.vertices, square().vertices, tol=1e-12)

    def test_triangle_area(self):
        S = steiner_x1(ConvexPolygon([(0, 0), (1, 0), (0, 1)])).polygon
        assert S.area == pytest.approx(0.5, rel=1e-12)

    def test_hexagon_vertex(self):
        assert has_vertex(steiner_regular_2n(3, 0.0).polygon, (0.5, math.sqrt(3) / 2))

    def test_decagon_vertex(self):
        assert has_vertex(steiner_regular_2n(5, 0.0).polygon, (math.cos(2 * PI / 5), math.sin(2 * PI / 5)))

    def test_hexagon_pi_over_12(self):
        fast = steiner_regular_2n(3, PI / 12).polygon
        assert same_vertex_set(fast.vertices, steiner_x1(regular(6, 1.0, PI / 12)).polygon.vertices, tol=1e-9)

    def test_chords(self):
        assert chord_length(square(1.0), 0.0) == pytest.approx(2.0)
        assert chord_length(regular(4), 0.5) == pytest.approx(1.0)


class TestRadiusExamples:
    def test_doubly_symmetric(self):
        assert covering_radius_doubly_symmetric(square()) == pytest.approx(1.0)
        assert covering_radius_doubly_symmetric(regular(4)) == pytest.approx(1.0)
        assert covering_radius_doubly_symmetric(regular(512)) == pytest.approx(math.sqrt(2) / 2)

    def test_oracle(self):
        assert deep_hole_oracle(square(), grid=64) == pytest.approx(1.0, abs=0.02)
        assert deep_hole_oracle(regular(4), grid=128, refine_iters=3) == pytest.approx(1.0, abs=0.005)

    def test_hexagon_at_closed_form_all_angles(self):
        K = regular(6, 0.788675)
        for th in np.linspace(0, PI / 6, 13):
            assert deep_hole_oracle(rotate(K, th)) <= 1.01

    def test_certificates(self):
        v = covering_radius(regular(4))
        assert v.certificate is Certificate.DOUBLY_SYMMETRIC_CORNER and v.radius == pytest.approx(1.0)
        v = covering_radius(regular(8, z_regular_4n(2), PI / 16))
        assert v.certificate is Certificate.INRADIUS_BALL and v.covers
        v = covering_radius(rotate(regular(6, 0.788675), PI / 12))
        assert v.certificate is Certificate.STEINER_SQUARE and v.covers


class TestSweepExamples:
    def test_hexagon_above(self):
        assert has_covering_property(regular(6, 0.79), sweep_count=256).max_radius <= 1

    def test_decagon_below(self):
        assert has_covering_property(regular(10, 0.70), sweep_count=256).max_radius > 1

    def test_disc(self):
        rep = has_covering_property(regular(512, math.sqrt(2) / 2), sweep_count=16,
                                    angle_range=(0.0, PI / 4))
        assert all(abs(r - 1) <= 0.01 for r in rep.radii)


class TestWitnessExamples:
    def test_small_hexagon(self):
        x = find_witness(regular(6, 0.70), 0.0)
        assert x is not None and verify_witness(regular(6, 0.70), 0.0, x)

    def test_large_hexagon(self):
        for th in (0.0, 0.1, 0.4):
            assert find_witness(regular(6, 2.0), th) is None

    def test_verify(self):
        assert not verify_witness(square(), 0.0, (0, 0))
        assert verify_witness(regular(4, 0.5), 0.0, (0.5, 0.5))


class TestClassicExamples:
    def test_ellipsoid(self):
        assert not ellipsoid_covers(EllipsoidSpec((0.5, 0.5)))
        assert ellipsoid_covers(EllipsoidSpec((math.sqrt(2) / 2, math.sqrt(2) / 2)))
        assert ellipsoid_covers(EllipsoidSpec((1, 1)))
        assert not ellipsoid_covers(EllipsoidSpec((10, 0.4)))

    def test_triangle(self):
        assert not triangle_covers(TriangleSpec(0.6, 0.6, 1.0))
        assert triangle_covers(TriangleSpec(4, 4, 4))

    def test_parallelogram(self):
        assert not parallelogram_covers(ParallelogramSpec(1, 1, PI / 2))
        assert parallelogram_covers(ParallelogramSpec(1, 2, PI / 2))
        assert parallelogram_covers(ParallelogramSpec(math.sqrt(2), math.sqrt(2), PI / 2))


class TestRadiiExamples:
    def test_regular_4n_limit(self):
        assert z_regular_4n(10 ** 6) == pytest.approx(math.sqrt(2) / 2, abs=1e-12)

    def test_proof_function_endpoints(self):
        assert s_theta(0.0) == pytest.approx(S0, abs=1e-15)
        assert t_theta_hex(PI / 6) == pytest.approx(S0, abs=1e-15)
        assert z_hexagon() == pytest.approx(1 / (2 * S0), abs=1e-15)

    def test_decagon_endpoint(self):
        t0 = math.sin(PI / 5) / (math.cos(PI / 5) - math.sin(PI / 5) + math.sin(2 * PI / 5) - math.cos(2 * PI / 5))
        assert t_theta_dec(0.0) == pytest.approx(t0, abs=1e-15)
        assert t_theta_dec(0.0) == pytest.approx(0.6808812905078, abs=1e-12)
        assert t_theta_dec(PI / 20) > t_theta_dec(0.0)
