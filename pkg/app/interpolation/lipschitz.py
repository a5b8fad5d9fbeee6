"""Max-of-cones Lipschitz extension of embedding coordinates"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from app.config import get_settings
from app.exceptions import DimensionMismatch, LipschitzViolationAtAnchors
from app.interpolation.metric import ReferenceMetric
from app.utils.logger import setup_logger

settings = get_settings()
logger = setup_logger(__name__)


@dataclass(frozen=True, eq=False)
class LipschitzInterpolant:
    """
    Extension F = (f_1, ..., f_d) of anchor coordinates to the whole sample space

    f_l(m) = max_k (values[k, l] - c * metric(m, anchors[k])), the lower
    envelope of downward cones. With ``central`` the result is averaged with
    the upper envelope min_k (values[k, l] + c * metric(m, anchors[k])).

    ``constant_c`` is the constant actually used; it exceeds
    ``requested_c`` by the factor ``inflation`` when the anchor values broke
    the requested bound within tolerance. The Lipschitz guarantee only holds
    when ``metric`` is a true metric.
    """

    anchors: Sequence
    values: np.ndarray
    constant_c: float
    metric: ReferenceMetric
    requested_c: float
    inflation: float = 1.0
    central: bool = False

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    def evaluate_many(self, points: Sequence) -> np.ndarray:
        """F at each point, shape (len(points), d)"""
        distances = self.metric.matrix(points, self.anchors)
        cones = self.constant_c * distances[:, :, None]
        lower = np.max(self.values[None, :, :] - cones, axis=1)
        if not self.central:
            return lower
        upper = np.min(self.values[None, :, :] + cones, axis=1)
        return 0.5 * (lower + upper)

    def __repr__(self):
        return (
            f"<LipschitzInterpolant(n={self.n}, d={self.d}, c={self.constant_c:.6g}, "
            f"inflation={self.inflation:.6g}, central={self.central})>"
        )


def build_interpolant(
    anchors: Sequence,
    values,
    c: float,
    metric: ReferenceMetric,
    central: bool = False,
    rel_tolerance: Optional[float] = None,
    abs_tolerance: Optional[float] = None,
) -> LipschitzInterpolant:
    """
    Build the max-of-cones interpolant after checking the anchor condition

    Every anchor pair must satisfy |values[i, l] - values[j, l]| <= c * metric(m_i, m_j)
    for each component l. Excess within ``c * metric * rel_tolerance + abs_tolerance``
    is accepted and absorbed by inflating c to the largest observed ratio.

    Args:
        anchors: Sample points, in the representation ``metric`` accepts
        values: n x d anchor coordinates (an MDS or ALE configuration)
        c: Requested per-component Lipschitz constant, typically K * R
        metric: Reference metric on the sample space
        central: Average the lower and upper envelopes
        rel_tolerance: Relative slack (default ``Settings.interp_rel_tolerance``)
        abs_tolerance: Absolute slack (default ``Settings.interp_abs_tolerance``)

    Returns:
        LipschitzInterpolant

    Raises:
        LipschitzViolationAtAnchors: naming the worst pair, component and ratio
    """
    rel_tolerance = settings.interp_rel_tolerance if rel_tolerance is None else rel_tolerance
    abs_tolerance = settings.interp_abs_tolerance if abs_tolerance is None else abs_tolerance
    if c <= 0:
        raise ValueError(f"Lipschitz constant must be positive, got {c}")

    values = np.array(values, dtype=float, copy=True)
    if values.ndim == 1:
        values = values.reshape(-1, 1)
    if values.shape[0] != len(anchors):
        raise DimensionMismatch(f"{len(anchors)} anchors but {values.shape[0]} value rows")
    values.setflags(write=False)

    distances = metric.matrix(anchors, anchors)
    gaps = np.abs(values[:, None, :] - values[None, :, :])
    allowed = c * distances[:, :, None] * (1.0 + rel_tolerance) + abs_tolerance
    excess = gaps - allowed
    if np.any(excess > 0):
        i, j, component = np.unravel_index(int(np.argmax(excess)), excess.shape)
        ratio = gaps[i, j, component] / distances[i, j] if distances[i, j] > 0 else np.inf
        raise LipschitzViolationAtAnchors((int(i), int(j)), int(component), float(ratio), c)

    positive = distances > 0
    worst_ratio = float(np.max(gaps.max(axis=2)[positive] / distances[positive])) if np.any(positive) else 0.0
    effective = max(c, worst_ratio)
    inflation = effective / c
    if inflation > 1.0:
        logger.info(f"Anchor values exceed c={c:.6g} within tolerance; using c={effective:.6g}")

    return LipschitzInterpolant(
        anchors=anchors,
        values=values,
        constant_c=effective,
        metric=metric,
        requested_c=c,
        inflation=inflation,
        central=central,
    )


def evaluate(interp: LipschitzInterpolant, m) -> np.ndarray:
    """F(m) as a d-vector; reproduces values[k] at anchor k"""
    return interp.evaluate_many([m])[0]


def pseudometric(interp: LipschitzInterpolant, m1, m2) -> float:
    """Interpolated Euclidean pseudometric ||F(m1) - F(m2)||"""
    both = interp.evaluate_many([m1, m2])
    return float(np.linalg.norm(both[0] - both[1]))


@dataclass
class LipschitzCheck:
    """Largest sampled ratios against the Lipschitz bounds of an interpolant"""

    constant_c: float
    d: int
    component_ratio: float
    vector_ratio: float
    product_ratio: float
    max_pseudometric: float
    sample_diameter: float
    anchor_error: float
    slack: float = 1e-9

    @property
    def component_ok(self) -> bool:
        return self.component_ratio <= self.constant_c + self.slack

    @property
    def vector_ok(self) -> bool:
        return self.vector_ratio <= self.constant_c * np.sqrt(self.d) + self.slack

    @property
    def product_ok(self) -> bool:
        return self.product_ratio <= self.constant_c * np.sqrt(3 * self.d) + self.slack

    @property
    def bounded_ok(self) -> bool:
        return self.max_pseudometric <= self.constant_c * np.sqrt(self.d) * self.sample_diameter + self.slack

    @property
    def anchors_ok(self) -> bool:
        return self.anchor_error <= 1e-12 * max(1.0, float(self.constant_c))

    @property
    def passed(self) -> bool:
        return self.component_ok and self.vector_ok and self.product_ok and self.bounded_ok and self.anchors_ok


def _safe_ratio(numerator: np.ndarray, denominator: np.ndarray, floor: float = 0.0) -> float:
    keep = denominator > floor
    if not np.any(keep):
        return 0.0
    return float(np.max(numerator[keep] / denominator[keep]))


def lipschitz_checks(
    interp: LipschitzInterpolant,
    sampler: Callable[[int, np.random.Generator], np.ndarray],
    rng: np.random.Generator,
    pairs: int = 10_000,
    min_separation: float = 1e-6,
) -> LipschitzCheck:
    """
    Monte Carlo check of the interpolant's Lipschitz bounds

    Samples ``pairs`` point pairs for the per-component (c) and vector (c sqrt d)
    bounds and as many 4-tuples for the product-metric bound on the
    pseudometric (c sqrt(3d)). Also measures exactness at the anchors.

    Ratios skip pairs closer than ``min_separation``, where rounding in F
    dominates the quotient.
    """
    metric = interp.metric
    x, y = sampler(pairs, rng), sampler(pairs, rng)
    fx, fy = interp.evaluate_many(x), interp.evaluate_many(y)
    dxy = metric.paired(x, y)

    component_gaps = np.abs(fx - fy).max(axis=1)
    vector_gaps = np.linalg.norm(fx - fy, axis=1)

    # Tuples (m1, m2, m1', m2') = (x, y, x', y')
    x2, y2 = sampler(pairs, rng), sampler(pairs, rng)
    fx2, fy2 = interp.evaluate_many(x2), interp.evaluate_many(y2)
    dbar = np.linalg.norm(fx - fy, axis=1)
    dbar2 = np.linalg.norm(fx2 - fy2, axis=1)
    product = np.sqrt(metric.paired(x, x2) ** 2 + metric.paired(y, y2) ** 2)

    anchor_error = float(np.max(np.abs(interp.evaluate_many(interp.anchors) - interp.values)))

    return LipschitzCheck(
        constant_c=interp.constant_c,
        d=interp.d,
        component_ratio=_safe_ratio(component_gaps, dxy, min_separation),
        vector_ratio=_safe_ratio(vector_gaps, dxy, min_separation),
        product_ratio=_safe_ratio(np.abs(dbar - dbar2), product, min_separation),
        max_pseudometric=float(np.max(np.concatenate([dbar, dbar2]))),
        sample_diameter=float(np.max(np.concatenate([dxy, metric.paired(x2, y2)]))),
        anchor_error=anchor_error,
    )
