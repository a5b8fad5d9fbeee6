"""Classical (Torgerson) multidimensional scaling"""

import numpy as np
from scipy.linalg import eigh

from app.exceptions import DimensionTooLarge
from app.models import Configuration, DissimilarityMatrix, SpectralInit
from app.utils.logger import setup_logger

logger = setup_logger(__name__)

SIGN_THRESHOLD = 1e-12
EIGEN_RESIDUAL_TOL = 1e-10


def double_centered(delta: DissimilarityMatrix) -> np.ndarray:
    """B = -1/2 J (delta o delta) J with J = I - ee^t/n"""
    n = delta.n
    squared = delta.entries**2
    row_means = squared.mean(axis=1, keepdims=True)
    col_means = squared.mean(axis=0, keepdims=True)
    b = -0.5 * (squared - row_means - col_means + squared.mean())
    return 0.5 * (b + b.T)


def _orient(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its first coordinate above threshold is positive"""
    for j in range(vectors.shape[1]):
        nonzero = np.flatnonzero(np.abs(vectors[:, j]) > SIGN_THRESHOLD)
        if len(nonzero) and vectors[nonzero[0], j] < 0:
            vectors[:, j] = -vectors[:, j]
    return vectors


def classical_mds(delta: DissimilarityMatrix, d: int) -> SpectralInit:
    """
    Spectral embedding of the double-centered squared dissimilarities

    Args:
        delta: Dissimilarity matrix
        d: Embedding dimension, 1 <= d <= n - 1

    Returns:
        SpectralInit with the full spectrum (descending) and an n x d
        configuration; columns whose eigenvalue is not positive are zero
    """
    n = delta.n
    if d < 1 or d > n - 1:
        raise DimensionTooLarge(f"d={d} must lie in [1, {n - 1}] for n={n}")

    b = double_centered(delta)
    eigenvalues, eigenvectors = eigh(b)
    order = np.argsort(eigenvalues, kind="stable")[::-1]
    eigenvalues = eigenvalues[order]
    eigenvectors = _orient(eigenvectors[:, order].copy())

    lead_values = eigenvalues[:d]
    lead_vectors = eigenvectors[:, :d]
    residual = np.linalg.norm(b @ lead_vectors - lead_vectors * lead_values, axis=0)
    if np.any(residual > EIGEN_RESIDUAL_TOL * max(1.0, float(np.abs(eigenvalues).max()))):
        logger.warning(f"Eigenpair residual {residual.max():.3e} above tolerance")

    scales = np.sqrt(np.clip(lead_values, 0.0, None))
    points = lead_vectors * scales
    points[:, lead_values <= 0] = 0.0
    points -= points.mean(axis=0)

    logger.debug(f"Classical MDS n={n} d={d}, leading eigenvalues {lead_values}")
    return SpectralInit(eigenvalues=eigenvalues, config=Configuration(points))
