"""Neighborhood graphs over point clouds"""

from dataclasses import dataclass, field
from typing import List, Tuple, Union

import numpy as np
from scipy.spatial.distance import pdist, squareform

from app.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class KNN:
    """Connect each point to its k nearest neighbors (union-symmetrized)"""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")


@dataclass(frozen=True)
class Epsilon:
    """Connect every pair closer than or at ``radius``"""

    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")


GraphRule = Union[KNN, Epsilon]


@dataclass
class NeighborhoodGraph:
    """Undirected graph with Euclidean edge weights; edges stored once with i < j"""

    n: int
    adjacency: List[Tuple[int, int, float]]
    rule: GraphRule
    zero_weight_edges: List[Tuple[int, int]] = field(default_factory=list)

    def dense_weights(self) -> np.ndarray:
        """n x n matrix of edge weights with inf for missing edges (zero weights kept)"""
        weights = np.full((self.n, self.n), np.inf)
        for i, j, w in self.adjacency:
            weights[i, j] = w
            weights[j, i] = w
        return weights

    def __repr__(self):
        return f"<NeighborhoodGraph(n={self.n}, edges={len(self.adjacency)}, rule={self.rule})>"


def build_graph(points, rule: GraphRule) -> NeighborhoodGraph:
    """
    Symmetrized k-NN or epsilon-ball graph over the rows of ``points``

    Coincident points produce weight-0 edges; they are kept and listed in
    ``zero_weight_edges``. Connectivity is not checked here.

    Args:
        points: n x p array (a 1-D array is read as n x 1)
        rule: ``KNN(k)`` or ``Epsilon(radius)``

    Returns:
        NeighborhoodGraph
    """
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points.reshape(-1, 1)
    n = points.shape[0]
    distances = squareform(pdist(points)) if n > 1 else np.zeros((n, n))

    mask = np.zeros((n, n), dtype=bool)
    if isinstance(rule, KNN):
        for i in range(n):
            order = np.argsort(distances[i], kind="stable")
            neighbors = order[order != i][: rule.k]
            mask[i, neighbors] = True
        mask |= mask.T
    elif isinstance(rule, Epsilon):
        mask = distances <= rule.radius
        np.fill_diagonal(mask, False)
    else:
        raise TypeError(f"unknown graph rule {rule!r}")

    rows, cols = np.nonzero(np.triu(mask, k=1))
    adjacency = [(int(i), int(j), float(distances[i, j])) for i, j in zip(rows, cols)]
    zero_weight = [(i, j) for i, j, w in adjacency if w == 0.0]
    if zero_weight:
        logger.warning(f"{len(zero_weight)} zero-weight edges between coincident points")

    return NeighborhoodGraph(n=n, adjacency=adjacency, rule=rule, zero_weight_edges=zero_weight)
