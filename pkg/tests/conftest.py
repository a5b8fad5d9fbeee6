"""Shared fixtures: seeded generators and small instance factories"""

import numpy as np
import pytest

from app.dissim import euclidean_distances
from app.models import Configuration, DissimilarityMatrix


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def make_edm():
    """Exact Euclidean distance matrix of n random points in R^d"""

    def factory(rng, n, d):
        return euclidean_distances(Configuration(rng.standard_normal((n, d))))

    return factory


@pytest.fixture
def make_dissimilarity():
    """Symmetric hollow matrix with off-diagonal entries uniform on (0, high)"""

    def factory(rng, n, high=2.0):
        upper = np.triu(rng.uniform(0.0, high, size=(n, n)), k=1)
        return DissimilarityMatrix(upper + upper.T)

    return factory


@pytest.fixture
def colinear_delta():
    return DissimilarityMatrix(np.array([[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]]))
