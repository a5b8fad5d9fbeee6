"""Raw stress and the Guttman transform"""

from typing import Optional

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.sparse.csgraph import connected_components
from scipy.spatial.distance import pdist, squareform

from app.exceptions import DimensionMismatch, DisconnectedWeights
from app.models import Configuration, DissimilarityMatrix, WeightMatrix


def _pairwise(points: np.ndarray) -> np.ndarray:
    if points.shape[0] < 2:
        return np.zeros((points.shape[0], points.shape[0]))
    return squareform(pdist(points))


def _check(delta: DissimilarityMatrix, weights: WeightMatrix, config: Configuration) -> None:
    if not (delta.n == weights.n == config.n):
        raise DimensionMismatch(
            f"delta n={delta.n}, weights n={weights.n}, config n={config.n}"
        )


def raw_stress(delta: DissimilarityMatrix, weights: WeightMatrix, config: Configuration) -> float:
    """
    Weighted raw stress sigma(delta, Z) = sum_{i,j} w_ij (||z_i - z_j|| - delta_ij)^2

    The sum runs over all ordered pairs, so each unordered pair counts twice.
    """
    _check(delta, weights, config)
    residual = _pairwise(config.points) - delta.entries
    return float(np.sum(weights.entries * residual**2))


def step_norm(laplacian: np.ndarray, before: np.ndarray, after: np.ndarray) -> float:
    """trace((after - before)^t L (after - before))"""
    diff = after - before
    return float(np.sum(diff * (laplacian @ diff)))


class GuttmanOperator:
    """
    Majorization update Z -> (L + ee^t)^{-1} M(Z) Z for a fixed weight matrix

    L is the combinatorial Laplacian of the weights and M(Z) the Laplacian of
    the graph reweighted by w_ij * delta_ij / d_ij, with edges between
    coincident points removed. The factorization of L + ee^t is computed once
    and reused; when every off-diagonal weight equals some c the solve reduces
    to a division by c*n.
    """

    def __init__(self, weights: WeightMatrix, use_fastpath: bool = True):
        self.weights = weights
        self.n = weights.n
        self.laplacian = weights.laplacian()

        adjacency = weights.entries > 0
        np.fill_diagonal(adjacency, False)
        if self.n > 1:
            count, _ = connected_components(adjacency.astype(float), directed=False)
            if count > 1:
                raise DisconnectedWeights(f"weight graph has {count} components")

        self.uniform_weight = weights.off_diagonal_value()
        self.uniform_fastpath = use_fastpath and self.uniform_weight is not None
        self.laplacian_solver = None
        if not self.uniform_fastpath and self.n > 0:
            shifted = self.laplacian + np.ones((self.n, self.n))
            self.laplacian_solver = cho_factor(shifted, lower=True)

    def modified_laplacian(self, delta: DissimilarityMatrix, points: np.ndarray) -> np.ndarray:
        """M(Z): Laplacian with edge weights w_ij * delta_ij / d_ij, zero-distance edges dropped"""
        distances = _pairwise(points)
        numerator = self.weights.entries * delta.entries
        ratio = np.divide(
            numerator, distances, out=np.zeros_like(distances), where=distances > 0
        )
        np.fill_diagonal(ratio, 0.0)
        return np.diag(ratio.sum(axis=1)) - ratio

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Apply (L + ee^t)^{-1} to a right-hand side whose columns sum to zero"""
        if self.uniform_fastpath:
            return rhs / (self.uniform_weight * self.n)
        return cho_solve(self.laplacian_solver, rhs)

    def apply(self, delta: DissimilarityMatrix, points: np.ndarray) -> np.ndarray:
        rhs = self.modified_laplacian(delta, points) @ points
        out = self.solve(rhs)
        # Columns of M(Z)Z sum to zero, so the solve is centered up to rounding
        return out - out.mean(axis=0)

    def __repr__(self):
        return f"<GuttmanOperator(n={self.n}, uniform_fastpath={self.uniform_fastpath})>"


def guttman_transform(
    op: GuttmanOperator, delta: DissimilarityMatrix, config: Configuration
) -> Configuration:
    """One Guttman update; stress never increases and the result is centered"""
    _check(delta, op.weights, config)
    return Configuration(op.apply(delta, config.points))


def stationarity_residual(
    op: GuttmanOperator, delta: DissimilarityMatrix, config: Configuration
) -> float:
    """
    ||L Z - M(Z) Z||_F / (n d), zero at fixed points of the Guttman iteration

    A configuration with all points identical also scores 0 because constant
    columns lie in the kernel of both L and M(Z), even when delta is nonzero.
    """
    _check(delta, op.weights, config)
    points = config.points
    residual = op.laplacian @ points - op.modified_laplacian(delta, points) @ points
    return float(np.linalg.norm(residual) / (config.n * config.d))


def random_configuration(n: int, d: int, rng: np.random.Generator, scale: Optional[float] = 1.0) -> Configuration:
    """Centered standard-normal starting configuration"""
    points = rng.standard_normal((n, d)) * scale
    return Configuration(points - points.mean(axis=0))
