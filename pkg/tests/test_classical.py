import numpy as np
import pytest

from app.classical import classical_mds, double_centered
from app.dissim import euclidean_distances, lp_discrepancy
from app.exceptions import DimensionTooLarge
from app.models import Configuration, DissimilarityMatrix, WeightMatrix
from app.stress import raw_stress


def test_colinear_points_recovered(colinear_delta):
    init = classical_mds(colinear_delta, 1)
    assert np.allclose(np.sort(np.abs(init.config.points[:, 0])), [0.0, 1.0, 1.0])
    assert np.allclose(euclidean_distances(init.config).entries, colinear_delta.entries, atol=1e-9)
    # First coordinate above threshold is made positive
    assert init.config.points[0, 0] > 0


def test_planar_edm_has_zero_stress(rng, make_edm):
    delta = make_edm(rng, 12, 2)
    config = classical_mds(delta, 2).config
    assert raw_stress(delta, WeightMatrix.uniform(12), config) < 1e-10


def test_zero_delta_gives_zero_configuration():
    init = classical_mds(DissimilarityMatrix(np.zeros((4, 4))), 2)
    assert not init.config.points.any()
    assert np.allclose(init.eigenvalues, 0.0)


@pytest.mark.parametrize("d", [0, 3])
def test_dimension_bounds(colinear_delta, d):
    with pytest.raises(DimensionTooLarge):
        classical_mds(colinear_delta, d)


def test_spectrum_and_columns(rng, make_dissimilarity):
    delta = make_dissimilarity(rng, 10)
    init = classical_mds(delta, 3)
    assert np.all(np.diff(init.eigenvalues) <= 1e-12)
    points = init.config.points
    assert np.all(np.abs(points.mean(axis=0)) < 1e-10)
    gram = points.T @ points
    assert np.allclose(gram - np.diag(np.diag(gram)), 0.0, atol=1e-8)


def test_regular_simplex_needs_three_dimensions():
    delta = DissimilarityMatrix(np.ones((4, 4)) - np.eye(4))
    init = classical_mds(delta, 3)
    assert np.allclose(init.eigenvalues, [0.5, 0.5, 0.5, 0.0], atol=1e-12)
    assert lp_discrepancy(euclidean_distances(init.config), delta, 2) < 1e-8


def test_negative_eigenvalues_never_contribute_coordinates():
    # delta_02 = 3 breaks the triangle inequality: spectrum is 4.5, 0, -5/6
    delta = DissimilarityMatrix(np.array([[0.0, 1.0, 3.0], [1.0, 0.0, 1.0], [3.0, 1.0, 0.0]]))
    init = classical_mds(delta, 2)
    assert np.allclose(init.eigenvalues, [4.5, 0.0, -5.0 / 6.0], atol=1e-12)
    assert np.max(np.abs(init.config.points[:, 1])) < 1e-7


def test_double_centering_of_edm_is_gram_matrix(rng):
    points = rng.standard_normal((7, 2))
    points -= points.mean(axis=0)
    b = double_centered(euclidean_distances(Configuration(points)))
    assert np.allclose(b, points @ points.T, atol=1e-10)


def test_repeated_runs_are_identical(rng, make_dissimilarity):
    delta = make_dissimilarity(rng, 9)
    first, second = classical_mds(delta, 2), classical_mds(delta, 2)
    assert np.array_equal(first.config.points, second.config.points)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_exact_edm_reconstruction(rng, make_edm, d):
    delta = make_edm(rng, 20, d)
    config = classical_mds(delta, d).config
    assert lp_discrepancy(euclidean_distances(config), delta, 2) < 1e-8
