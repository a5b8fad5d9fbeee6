"""Synthetic manifolds with closed-form intrinsic metrics"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from app.interpolation import MetricCheck, ReferenceMetric
from app.models import DissimilarityMatrix

# The interval is laid out along a half circle of this radius, so graph
# geodesics (sums of chords) underestimate the arc length |x - y|.
INTERVAL_BEND_RADIUS = 1.0 / np.pi

SWISS_ROLL_ANGLES = (1.5 * np.pi, 4.5 * np.pi)
SWISS_ROLL_HEIGHT = 21.0


class ManifoldKind(str, Enum):
    INTERVAL = "interval"
    CIRCLE = "circle"
    SWISS_ROLL = "swissroll"


def _spiral_arc_length(theta: np.ndarray) -> np.ndarray:
    """Arc length of the spiral r = theta measured from theta = 0"""
    return 0.5 * (theta * np.sqrt(1.0 + theta**2) + np.arcsinh(theta))


@dataclass(frozen=True)
class ManifoldSpec:
    """
    Compact sample space with uniform sampling and a closed-form metric

    Points are represented by intrinsic parameters: x in [0, 1] for the
    interval, the angle for the circle, (spiral angle, height) for the
    Swiss roll. ``ambient`` maps them into the Euclidean space where
    neighborhood graphs are built.
    """

    kind: ManifoldKind
    seed: int = 0

    @property
    def intrinsic_dim(self) -> int:
        return 2 if self.kind == ManifoldKind.SWISS_ROLL else 1

    @property
    def embed_dim(self) -> int:
        """Embedding dimension used by the experiments"""
        return 1 if self.kind == ManifoldKind.INTERVAL else 2

    def rng(self, offset: int = 0) -> np.random.Generator:
        return np.random.default_rng(self.seed + offset)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """n intrinsic parameter rows drawn uniformly"""
        if self.kind == ManifoldKind.INTERVAL:
            return rng.uniform(0.0, 1.0, size=(n, 1))
        if self.kind == ManifoldKind.CIRCLE:
            return rng.uniform(0.0, 2.0 * np.pi, size=(n, 1))
        angles = rng.uniform(*SWISS_ROLL_ANGLES, size=n)
        heights = rng.uniform(0.0, SWISS_ROLL_HEIGHT, size=n)
        return np.column_stack([angles, heights])

    def ambient(self, params: np.ndarray) -> np.ndarray:
        params = self._rows(params)
        if self.kind == ManifoldKind.INTERVAL:
            angle = params[:, 0] / INTERVAL_BEND_RADIUS
            return INTERVAL_BEND_RADIUS * np.column_stack([np.cos(angle), np.sin(angle)])
        if self.kind == ManifoldKind.CIRCLE:
            return np.column_stack([np.cos(params[:, 0]), np.sin(params[:, 0])])
        theta, height = params[:, 0], params[:, 1]
        return np.column_stack([theta * np.cos(theta), height, theta * np.sin(theta)])

    def pairwise(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Closed-form intrinsic distances between parameter rows"""
        xs, ys = self._rows(xs), self._rows(ys)
        if self.kind == ManifoldKind.INTERVAL:
            return np.abs(xs[:, 0][:, None] - ys[:, 0][None, :])
        if self.kind == ManifoldKind.CIRCLE:
            gap = np.mod(np.abs(xs[:, 0][:, None] - ys[:, 0][None, :]), 2.0 * np.pi)
            return np.minimum(gap, 2.0 * np.pi - gap)
        arc = _spiral_arc_length(xs[:, 0])[:, None] - _spiral_arc_length(ys[:, 0])[None, :]
        lift = xs[:, 1][:, None] - ys[:, 1][None, :]
        return np.sqrt(arc**2 + lift**2)

    def metric(self) -> ReferenceMetric:
        return ReferenceMetric(
            evaluator=lambda a, b: float(self.pairwise(a, b)[0, 0]),
            pairwise=self.pairwise,
        )

    def true_dissimilarity(self, params: np.ndarray) -> DissimilarityMatrix:
        distances = self.pairwise(params, params)
        np.fill_diagonal(distances, 0.0)
        return DissimilarityMatrix(0.5 * (distances + distances.T))

    def _rows(self, params) -> np.ndarray:
        return np.asarray(params, dtype=float).reshape(-1, self.intrinsic_dim)


def verify_metric_axioms(
    manifold: ManifoldSpec, triples: int = 10_000, seed: int = 0, tol: float = 1e-12
) -> MetricCheck:
    """Spot-check symmetry, identity and the triangle inequality of the closed-form metric"""
    rng = np.random.default_rng(seed)
    points = manifold.sample(max(3, min(triples, 2000)), rng)
    return manifold.metric().spot_check(points, triples, rng, tol=tol)
