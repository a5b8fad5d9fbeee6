"""Distances and discrepancies between dissimilarity structures"""

import numpy as np
from scipy.spatial.distance import pdist, squareform

from app.exceptions import DimensionMismatch, InfiniteRatio
from app.models import Configuration, DissimilarityMatrix


def euclidean_distances(config: Configuration) -> DissimilarityMatrix:
    """Pairwise Euclidean distances d_ij = ||z_i - z_j|| (an EDM-1 matrix)"""
    if config.n < 2:
        return DissimilarityMatrix(np.zeros((config.n, config.n)))
    return DissimilarityMatrix(squareform(pdist(config.points)))


def _check_sizes(a: DissimilarityMatrix, b: DissimilarityMatrix) -> None:
    if a.n != b.n:
        raise DimensionMismatch(f"matrix sizes differ: {a.n} vs {b.n}")


def ratio_metric(a: DissimilarityMatrix, b: DissimilarityMatrix) -> float:
    """
    Log-ratio metric mu(a, b) = max over off-diagonal pairs of |log a_ij - log b_ij|

    Pairs where both entries are zero are skipped; a zero in only one of
    the two matrices makes the ratio unbounded.
    """
    _check_sizes(a, b)
    iu = np.triu_indices(a.n, k=1)
    x, y = a.entries[iu], b.entries[iu]

    zero_x, zero_y = x == 0, y == 0
    if np.any(zero_x != zero_y):
        k = int(np.flatnonzero(zero_x != zero_y)[0])
        raise InfiniteRatio(f"zero pattern differs at pair ({iu[0][k]},{iu[1][k]})")

    keep = ~zero_y
    if not np.any(keep):
        return 0.0
    return float(np.max(np.abs(np.log(x[keep]) - np.log(y[keep]))))


def lp_discrepancy(a: DissimilarityMatrix, b: DissimilarityMatrix, p: float = 2.0) -> float:
    """Empirical L^p norm ((1/n^2) sum_ij |a_ij - b_ij|^p)^(1/p) with uniform weights"""
    _check_sizes(a, b)
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if a.n == 0:
        return 0.0
    diff = np.abs(a.entries - b.entries)
    if np.isinf(p):
        return float(diff.max())
    return float(np.mean(diff**p) ** (1.0 / p))


def sup_discrepancy(a: DissimilarityMatrix, b: DissimilarityMatrix) -> float:
    """Largest entrywise difference"""
    _check_sizes(a, b)
    return float(np.max(np.abs(a.entries - b.entries))) if a.n else 0.0


def triangle_defect(delta: DissimilarityMatrix) -> float:
    """Largest violation of delta_ik <= delta_ij + delta_jk over all triples (0 for a metric)"""
    entries = delta.entries
    worst = 0.0
    for j in range(delta.n):
        # via[i, k] = delta_ij + delta_jk
        via = entries[:, j][:, None] + entries[j, :][None, :]
        worst = max(worst, float(np.max(entries - via)))
    return worst
