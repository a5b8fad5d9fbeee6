"""File storage for matrices, reports and experiment tables"""

from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel

from app.config import get_settings
from app.exceptions import MatrixParseError, RaggedRows
from app.utils.logger import setup_logger

settings = get_settings()
logger = setup_logger(__name__)

PathLike = Union[str, Path]


class MatrixStorage:
    """
    Reads and writes the engine's file formats

    - matrices and configurations: headerless CSV, one row per line,
      numbers written with 17 significant digits so doubles round-trip
    - reports: JSON produced from pydantic models (keys by alias)
    - experiment tables: CSV with a header row
    """

    def __init__(self, float_format: Optional[str] = None):
        self.float_format = float_format or settings.csv_float_format

    def read_matrix(self, path: PathLike) -> np.ndarray:
        """
        Read a headerless numeric CSV

        Raises:
            RaggedRows: if rows have different numbers of fields
            MatrixParseError: for empty files or non-numeric cells
        """
        try:
            frame = pd.read_csv(path, header=None, skip_blank_lines=True, float_precision="round_trip")
        except FileNotFoundError as exc:
            raise MatrixParseError(f"{path}: no such file") from exc
        except pd.errors.EmptyDataError as exc:
            raise MatrixParseError(f"{path}: empty file") from exc
        except pd.errors.ParserError as exc:
            raise RaggedRows(f"{path}: {exc}") from exc

        if frame.isna().to_numpy().any():
            row = int(np.flatnonzero(frame.isna().to_numpy().any(axis=1))[0])
            raise RaggedRows(f"{path}: row {row + 1} has missing fields")
        try:
            values = frame.to_numpy(dtype=float)
        except (ValueError, TypeError) as exc:
            raise MatrixParseError(f"{path}: non-numeric cell ({exc})") from exc

        logger.debug(f"Read {values.shape[0]}x{values.shape[1]} matrix from {path}")
        return values

    def write_matrix(self, path: PathLike, values) -> None:
        """Write a 2-D array as headerless CSV"""
        values = np.asarray(values, dtype=float)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        pd.DataFrame(values).to_csv(
            path, header=False, index=False, float_format=self.float_format, lineterminator="\n"
        )
        logger.debug(f"Wrote {values.shape[0]}x{values.shape[1]} matrix to {path}")

    def write_report(self, path: PathLike, report: BaseModel) -> None:
        """Write a pydantic report as indented JSON"""
        Path(path).write_text(report.model_dump_json(by_alias=True, indent=2) + "\n")

    def write_table(self, path: PathLike, table: pd.DataFrame) -> None:
        """Write an experiment table with a header row"""
        table.to_csv(path, index=False, float_format=self.float_format, lineterminator="\n")
        logger.info(f"Wrote {len(table)} rows to {path}")
