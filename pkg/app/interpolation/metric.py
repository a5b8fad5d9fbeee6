"""Reference metrics on sample spaces"""

from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

import numpy as np


@dataclass
class MetricCheck:
    """Worst defects found by a metric-axiom spot check"""

    triples: int
    symmetry_defect: float
    identity_defect: float
    triangle_defect: float
    tol: float

    @property
    def passed(self) -> bool:
        return max(self.symmetry_defect, self.identity_defect, self.triangle_defect) <= self.tol


@dataclass(frozen=True)
class ReferenceMetric:
    """
    Metric on sample points, e.g. the closed-form distance of a manifold

    ``evaluator`` maps two points to a nonnegative real. ``pairwise``, when
    given, maps two stacked point arrays to their distance matrix and is
    used for vectorized evaluation. The axioms are spot-checked with
    ``spot_check``, never assumed.
    """

    evaluator: Callable[[Any, Any], float]
    pairwise: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None

    def __call__(self, a, b) -> float:
        return float(self.evaluator(a, b))

    def matrix(self, xs: Sequence, ys: Sequence) -> np.ndarray:
        """Distances between every x in ``xs`` and every y in ``ys``"""
        if self.pairwise is not None:
            return np.asarray(self.pairwise(np.asarray(xs), np.asarray(ys)), dtype=float)
        return np.array([[self.evaluator(x, y) for y in ys] for x in xs], dtype=float).reshape(
            len(xs), len(ys)
        )

    def spot_check(
        self, points: Sequence, triples: int, rng: np.random.Generator, tol: float = 1e-12
    ) -> MetricCheck:
        """Check symmetry, identity and the triangle inequality on random triples of ``points``"""
        count = len(points)
        idx = rng.integers(0, count, size=(triples, 3))
        a = [points[k] for k in idx[:, 0]]
        b = [points[k] for k in idx[:, 1]]
        c = [points[k] for k in idx[:, 2]]

        ab = self.paired(a, b)
        ba = self.paired(b, a)
        bc = self.paired(b, c)
        ac = self.paired(a, c)
        aa = self.paired(a, a)

        return MetricCheck(
            triples=triples,
            symmetry_defect=float(np.max(np.abs(ab - ba))),
            identity_defect=float(np.max(np.abs(aa))),
            triangle_defect=float(max(0.0, np.max(ac - ab - bc))),
            tol=tol,
        )

    def paired(self, xs: Sequence, ys: Sequence) -> np.ndarray:
        """Elementwise distances d(xs[k], ys[k])"""
        if self.pairwise is not None:
            return self._diagonal(np.asarray(xs), np.asarray(ys))
        return np.array([self.evaluator(x, y) for x, y in zip(xs, ys)], dtype=float)

    def _diagonal(self, xs: np.ndarray, ys: np.ndarray, block: int = 512) -> np.ndarray:
        out = np.empty(len(xs))
        for start in range(0, len(xs), block):
            stop = min(start + block, len(xs))
            out[start:stop] = np.diag(self.pairwise(xs[start:stop], ys[start:stop]))
        return out
