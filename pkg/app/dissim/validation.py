"""Validation of raw dissimilarity data"""

from typing import Optional

import numpy as np

from app.config import get_settings
from app.exceptions import (
    AsymmetricBeyondTolerance,
    NegativeEntry,
    NonFiniteEntry,
    NonzeroDiagonal,
    NotSquare,
)
from app.models import DissimilarityMatrix

settings = get_settings()


def validate_dissimilarity(raw, tol: Optional[float] = None) -> DissimilarityMatrix:
    """
    Validate a raw square array and wrap it as a DissimilarityMatrix

    Asymmetric input is rejected, never averaged.

    Args:
        raw: n x n array-like of reals
        tol: Absolute tolerance for asymmetry and nonzero diagonal
            (defaults to ``Settings.symmetry_tol``)

    Returns:
        DissimilarityMatrix with exactly symmetric, hollow entries
    """
    tol = settings.symmetry_tol if tol is None else tol
    try:
        entries = np.asarray(raw, dtype=float)
    except ValueError as exc:
        raise NotSquare(f"rows of unequal length: {exc}") from exc

    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {entries.shape}")
    if not np.all(np.isfinite(entries)):
        raise NonFiniteEntry("matrix contains NaN or infinite entries")

    if np.any(entries < 0):
        i, j = np.argwhere(entries < 0)[0]
        raise NegativeEntry(f"entry ({i},{j}) = {entries[i, j]!r}")

    diagonal = np.abs(np.diag(entries))
    if np.any(diagonal > tol):
        i = int(np.argmax(diagonal))
        raise NonzeroDiagonal(f"entry ({i},{i}) = {entries[i, i]!r}")

    asymmetry = np.abs(entries - entries.T)
    if np.any(asymmetry > tol):
        i, j = np.unravel_index(int(np.argmax(asymmetry)), asymmetry.shape)
        raise AsymmetricBeyondTolerance(
            f"entries ({i},{j})={entries[i, j]!r} and ({j},{i})={entries[j, i]!r}"
        )

    # Within tolerance: store the upper triangle mirrored so symmetry is exact
    upper = np.triu(entries, k=1)
    return DissimilarityMatrix(upper + upper.T)
