"""Domain types"""

from app.models.matrices import Configuration, DissimilarityMatrix, WeightMatrix
from app.models.reports import AleReport, SolveReport, SpectralInit, Termination

__all__ = [
    "Configuration",
    "DissimilarityMatrix",
    "WeightMatrix",
    "AleReport",
    "SolveReport",
    "SpectralInit",
    "Termination",
]
