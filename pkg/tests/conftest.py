import math

import numpy as np
import pytest

from latcover.geom import ConvexPolygon


def random_polygon(rng, n_points=12, symmetric=False, spread=1.0):
    """Hull of random points around the origin; origin-symmetric on request."""
    while True:
        r = spread * rng.uniform(0.3, 1.0, n_points)
        t = rng.uniform(0, 2 * math.pi, n_points)
        pts = np.column_stack([r * np.cos(t), r * np.sin(t)])
        if symmetric:
            pts = np.vstack([pts, -pts])
        try:
            K = ConvexPolygon.from_points(pts)
        except ValueError:
            continue
        if K.origin_interior and K.area > 1e-3:
            return K


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
