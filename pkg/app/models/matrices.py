"""Core matrix data types: dissimilarities, configurations and weights"""

from dataclasses import dataclass

import numpy as np

from app.exceptions import DimensionMismatch, NonFiniteEntry, NotSquare


def _frozen(array) -> np.ndarray:
    out = np.array(array, dtype=float, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class DissimilarityMatrix:
    """
    Symmetric, nonnegative, hollow n x n matrix of pairwise dissimilarities

    Instances built directly are trusted; use ``validate_dissimilarity`` for
    data coming from outside the library.
    """

    entries: np.ndarray

    def __post_init__(self):
        entries = _frozen(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise NotSquare(f"expected a square matrix, got shape {entries.shape}")
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def max_entry(self) -> float:
        """The bound delta = max_ij delta_ij"""
        return float(self.entries.max()) if self.n else 0.0

    def off_diagonal(self) -> np.ndarray:
        """Strict upper-triangle entries as a flat vector"""
        iu = np.triu_indices(self.n, k=1)
        return self.entries[iu]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __repr__(self):
        return f"<DissimilarityMatrix(n={self.n}, max={self.max_entry:.4g})>"


@dataclass(frozen=True, eq=False)
class Configuration:
    """n points embedded in d-dimensional Euclidean space"""

    points: np.ndarray

    def __post_init__(self):
        points = _frozen(self.points)
        if points.ndim == 1:
            points = _frozen(points.reshape(-1, 1))
        if points.ndim != 2:
            raise DimensionMismatch(f"configuration must be n x d, got shape {points.shape}")
        if not np.all(np.isfinite(points)):
            raise NonFiniteEntry("configuration contains non-finite coordinates")
        object.__setattr__(self, "points", points)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def centered(self) -> "Configuration":
        return Configuration(self.points - self.points.mean(axis=0))

    def __array__(self, dtype=None, copy=None):
        return self.points if dtype is None else self.points.astype(dtype)

    def __repr__(self):
        return f"<Configuration(n={self.n}, d={self.d})>"


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """Symmetric matrix of finite nonnegative pair weights w_ij"""

    entries: np.ndarray

    def __post_init__(self):
        entries = _frozen(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise NotSquare(f"expected a square weight matrix, got shape {entries.shape}")
        if not np.all(np.isfinite(entries)) or np.any(entries < 0):
            raise NonFiniteEntry("weights must be finite and nonnegative")
        if not np.array_equal(entries, entries.T):
            raise DimensionMismatch("weight matrix must be symmetric")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def uniform(cls, n: int) -> "WeightMatrix":
        """Default weights w_ij = 1/n^2"""
        return cls(np.full((n, n), 1.0 / n**2))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def off_diagonal_value(self):
        """Common off-diagonal weight when all are equal, otherwise None"""
        if self.n < 2:
            return None
        mask = ~np.eye(self.n, dtype=bool)
        values = self.entries[mask]
        first = values[0]
        if first > 0 and np.all(values == first):
            return float(first)
        return None

    def laplacian(self) -> np.ndarray:
        """Combinatorial Laplacian of the weight graph (diagonal weights ignored)"""
        adjacency = self.entries.copy()
        np.fill_diagonal(adjacency, 0.0)
        return np.diag(adjacency.sum(axis=1)) - adjacency

    def __repr__(self):
        return f"<WeightMatrix(n={self.n})>"
