"""Dissimilarity validation and metrics"""

from app.dissim.metrics import (
    euclidean_distances,
    lp_discrepancy,
    ratio_metric,
    sup_discrepancy,
    triangle_defect,
)
from app.dissim.validation import validate_dissimilarity

__all__ = [
    "validate_dissimilarity",
    "euclidean_distances",
    "ratio_metric",
    "lp_discrepancy",
    "sup_discrepancy",
    "triangle_defect",
]
