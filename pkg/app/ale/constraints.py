"""Pairwise distance caps and single-constraint projection"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist

from app.exceptions import DegeneratePair, DimensionMismatch
from app.models import Configuration, DissimilarityMatrix


@dataclass(frozen=True, eq=False)
class ConstraintSet:
    """
    Caps ||z_i - z_j|| <= caps[i, j] for i < j

    An infinite cap means the pair is unconstrained. The diagonal is unused.
    """

    caps: np.ndarray

    def __post_init__(self):
        caps = np.array(self.caps, dtype=float, copy=True)
        if caps.ndim != 2 or caps.shape[0] != caps.shape[1]:
            raise DimensionMismatch(f"caps must be square, got shape {caps.shape}")
        if np.any(caps < 0) or np.any(np.isnan(caps)):
            raise ValueError("caps must be nonnegative")
        if not np.array_equal(caps, caps.T):
            raise ValueError("caps must be symmetric")
        np.fill_diagonal(caps, np.inf)
        caps.setflags(write=False)
        object.__setattr__(self, "caps", caps)

    @classmethod
    def from_delta(cls, delta: DissimilarityMatrix, lipschitz_k: float) -> "ConstraintSet":
        """caps[i, j] = K * delta_ij"""
        return cls(lipschitz_k * delta.entries)

    @property
    def n(self) -> int:
        return self.caps.shape[0]

    def finite_pairs(self):
        """(i, j, cap) arrays for every finite cap with i < j, in lexicographic order"""
        i, j = np.triu_indices(self.n, k=1)
        caps = self.caps[i, j]
        keep = np.isfinite(caps)
        return i[keep], j[keep], caps[keep]

    @property
    def max_finite_cap(self) -> float:
        _, _, caps = self.finite_pairs()
        return float(caps.max()) if len(caps) else 0.0

    def feasibility_scale(self) -> float:
        """1 + largest finite cap; tolerances are applied relative to it"""
        return 1.0 + self.max_finite_cap


def project_pair(config: Configuration, i: int, j: int, cap: float) -> Configuration:
    """
    Nearest configuration (Frobenius norm) satisfying ||z_i - z_j|| <= cap

    A violating pair is contracted symmetrically about its midpoint so the
    new distance equals ``cap``; cap 0 replaces both points by their average.
    """
    if i == j:
        raise ValueError("project_pair needs two distinct indices")
    if cap < 0:
        raise DegeneratePair(f"negative cap {cap} for pair ({i},{j})")

    points = config.points
    gap = points[i] - points[j]
    distance = float(np.linalg.norm(gap))
    if distance <= cap:
        return config

    projected = points.copy()
    midpoint = 0.5 * (points[i] + points[j])
    if cap == 0:
        projected[i] = midpoint
        projected[j] = midpoint
    else:
        half = (0.5 * cap / distance) * gap
        projected[i] = midpoint + half
        projected[j] = midpoint - half
    return Configuration(projected)


def max_violation(config: Configuration, constraints: ConstraintSet) -> float:
    """max over finite caps of max(0, ||z_i - z_j|| - cap_ij)"""
    if config.n != constraints.n:
        raise DimensionMismatch(f"config n={config.n}, constraints n={constraints.n}")
    i, j, caps = constraints.finite_pairs()
    if len(caps) == 0:
        return 0.0
    distances = np.linalg.norm(config.points[i] - config.points[j], axis=1)
    return float(max(0.0, np.max(distances - caps)))


def max_distance(config: Configuration) -> float:
    """Largest pairwise distance of a configuration"""
    if config.n < 2:
        return 0.0
    return float(pdist(config.points).max())
