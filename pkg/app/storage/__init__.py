"""Persistence of matrices, reports and experiment tables"""

from app.storage.matrix_storage import MatrixStorage
from app.storage.schemas import AleEmbedReport, EmbedReport, IsomapReport, ValidateReport

__all__ = ["MatrixStorage", "AleEmbedReport", "EmbedReport", "IsomapReport", "ValidateReport"]
