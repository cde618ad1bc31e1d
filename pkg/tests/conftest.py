"""Shared fixtures: canonical polytopes and a reduced Monte Carlo budget."""

import itertools

import numpy as np
import pytest

from kazvol import RandomStream, hull

# Angle Monte Carlo budget used throughout the unit tests; the acceptance
# tests raise it where a criterion demands tighter error bars.
SAMPLES = 100_000


@pytest.fixture
def stream():
    return RandomStream(seed=42)


@pytest.fixture
def square_c1():
    """conv{1, i, -1, -i} in C^1."""
    return hull(np.array([[1, 0], [0, 1], [-1, 0], [0, -1]], dtype=float))


@pytest.fixture
def cube4():
    """I_4 = [-1, 1]^4 in C^2."""
    return hull(np.array(list(itertools.product([-1.0, 1.0], repeat=4))))


@pytest.fixture
def theta4():
    """Crosspolytope conv{±e_1, ±ie_1, ±e_2, ±ie_2} in C^2."""
    return hull(np.vstack([np.eye(4), -np.eye(4)]))


@pytest.fixture
def theta3():
    """Lower-dimensional crosspolytope conv{±1, ±i, ±e_2} in C^2."""
    return hull(np.array([
        [1, 0, 0, 0], [-1, 0, 0, 0], [0, 1, 0, 0],
        [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, -1, 0],
    ], dtype=float))


@pytest.fixture
def real_square2():
    """Real unit-side-2 square in R^2 x {0} subset C^2 (vertices ±1 real)."""
    return hull(np.array([
        [1, 0, 1, 0], [1, 0, -1, 0], [-1, 0, 1, 0], [-1, 0, -1, 0],
    ], dtype=float))


def random_polytope(rng, n_vertices=6, ambient=2):
    """Full-dimensional random polytope in C^ambient."""
    return hull(rng.normal(size=(n_vertices, 2 * ambient)))


def random_polygon_real(rng, n_vertices=5):
    """Random real polygon in R^2 x {0} subset C^2."""
    pts2 = rng.normal(size=(n_vertices, 2))
    pts = np.zeros((n_vertices, 4))
    pts[:, 0] = pts2[:, 0]
    pts[:, 2] = pts2[:, 1]
    return hull(pts)
