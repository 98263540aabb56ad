import os
import sys
from fractions import Fraction

import numpy as np
import pytest

project_root = os.path.abspath(os.path.dirname(__file__))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from lexcut.arith.views import identity  # noqa: E402
from lexcut.oracles.views import BallBox, PointCloud, Polytope  # noqa: E402


def polytope_from_vertices(vertices) -> Polytope:
    """Counter-clockwise 2-D vertex list to {a x >= b}"""
    rows, rhs = [], []
    for (x1, y1), (x2, y2) in zip(vertices, vertices[1:] + vertices[:1]):
        # inward normal of the edge for counter-clockwise order
        a = (-(Fraction(y2) - Fraction(y1)), Fraction(x2) - Fraction(x1))
        rows.append(a)
        rhs.append(a[0] * Fraction(x1) + a[1] * Fraction(y1))
    return Polytope.from_matrix(rows, rhs)


@pytest.fixture
def triangle_one() -> Polytope:
    """Vertices (0,0), (1,0), (1/2,-1)"""
    return polytope_from_vertices([(0, 0), (Fraction(1, 2), -1), (1, 0)])


@pytest.fixture
def triangle_two() -> Polytope:
    """Vertices (0,3/2), (1/4,0), (1,0)"""
    return polytope_from_vertices([(0, Fraction(3, 2)), (Fraction(1, 4), 0), (1, 0)])


@pytest.fixture
def unit_square() -> Polytope:
    return Polytope.from_matrix([(1, 0), (-1, 0), (0, 1), (0, -1)], [0, -1, 0, -1])


@pytest.fixture
def small_cloud() -> PointCloud:
    return PointCloud.of([(1, 2), (1, 1), (2, 0)])


@pytest.fixture
def ball2() -> BallBox:
    return BallBox.hard_instance(2)


@pytest.fixture
def random_unimodular():
    """Factory: random unimodular matrices built from elementary integer row operations"""

    def build(rng: np.random.Generator, n: int, steps: int = 12):
        rows = [list(r) for r in identity(n)]
        for _ in range(steps):
            if n > 1:
                i, j = (int(v) for v in rng.choice(n, size=2, replace=False))
                q = int(rng.integers(-2, 3))
                rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
            if rng.random() < 0.2:
                k = int(rng.integers(0, n))
                rows[k] = [-a for a in rows[k]]
        return tuple(tuple(r) for r in rows)

    return build
