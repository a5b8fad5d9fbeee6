"""Desk-scale experiments and numeric lemma checks"""

from app.harness.experiments import (
    Ale,
    EmbeddingMode,
    TrendReport,
    Unconstrained,
    consistency_experiment,
    fixed_n_stability,
    knn_size,
    median_trend,
    run_consistency_grid,
    run_interpolant_grid,
    uniform_interpolant_experiment,
)
from app.harness.lemmas import (
    DecreaseLemmaCheck,
    SixDeltaCheck,
    check_decrease_lemma,
    check_six_delta_bound,
    random_dissimilarity,
)
from app.harness.manifolds import ManifoldKind, ManifoldSpec, verify_metric_axioms

__all__ = [
    "Ale",
    "EmbeddingMode",
    "TrendReport",
    "Unconstrained",
    "consistency_experiment",
    "fixed_n_stability",
    "knn_size",
    "median_trend",
    "run_consistency_grid",
    "run_interpolant_grid",
    "uniform_interpolant_experiment",
    "DecreaseLemmaCheck",
    "SixDeltaCheck",
    "check_decrease_lemma",
    "check_six_delta_bound",
    "random_dissimilarity",
    "ManifoldKind",
    "ManifoldSpec",
    "verify_metric_axioms",
]
