import json

import numpy as np
import pandas as pd
import pytest

from app.exceptions import MatrixParseError, RaggedRows
from app.storage import MatrixStorage, ValidateReport


@pytest.fixture
def storage():
    return MatrixStorage()


@pytest.mark.parametrize("text", ["0,1\n1,0,2\n", "0,1,2\n1,0\n2,1,0\n"])
def test_ragged_rows(storage, tmp_path, text):
    path = tmp_path / "ragged.csv"
    path.write_text(text)
    with pytest.raises(RaggedRows):
        storage.read_matrix(path)


def test_non_numeric_cell(storage, tmp_path):
    path = tmp_path / "words.csv"
    path.write_text("0,a\na,0\n")
    with pytest.raises(MatrixParseError):
        storage.read_matrix(path)


def test_empty_and_missing_files(storage, tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(MatrixParseError):
        storage.read_matrix(empty)
    with pytest.raises(MatrixParseError):
        storage.read_matrix(tmp_path / "absent.csv")


def test_matrix_round_trip_is_exact(storage, tmp_path, rng):
    values = rng.standard_normal((6, 3)) * 10.0 ** rng.integers(-8, 8, size=(6, 3))
    path = tmp_path / "points.csv"
    storage.write_matrix(path, values)
    assert np.array_equal(storage.read_matrix(path), values)
    assert "," in path.read_text().splitlines()[0]


def test_vector_is_written_as_column(storage, tmp_path):
    path = tmp_path / "column.csv"
    storage.write_matrix(path, [1.0, 2.5])
    assert path.read_text() == "1\n2.5\n"


def test_report_uses_schema_key(storage, tmp_path):
    path = tmp_path / "report.json"
    storage.write_report(path, ValidateReport(n=3, valid=True, max_entry=2.0, triangle_defect=0.0, metric=True))
    payload = json.loads(path.read_text())
    assert payload["schema"] == "stress-mds/1"
    assert payload["metric"] is True


def test_table_has_header(storage, tmp_path):
    path = tmp_path / "table.csv"
    storage.write_table(path, pd.DataFrame({"n": [10, 20], "lp_error": [0.5, 0.25]}))
    assert path.read_text().splitlines() == ["n,lp_error", "10,0.5", "20,0.25"]
