"""Lipschitz interpolation and out-of-sample pseudometrics"""

from app.interpolation.lipschitz import (
    LipschitzCheck,
    LipschitzInterpolant,
    build_interpolant,
    evaluate,
    lipschitz_checks,
    pseudometric,
)
from app.interpolation.metric import MetricCheck, ReferenceMetric

__all__ = [
    "LipschitzCheck",
    "LipschitzInterpolant",
    "build_interpolant",
    "evaluate",
    "lipschitz_checks",
    "pseudometric",
    "MetricCheck",
    "ReferenceMetric",
]
