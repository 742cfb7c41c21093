"""
Tests for the JSON matrix file format
"""
import json

import numpy as np
import pytest

from linalg.block_matrix import BlockOperatorMatrix
from matrix_storage import MatrixStorage, dumps_matrix, load_matrix, loads_matrix, save_matrix
from utils import ParseError, WRadiusError


@pytest.fixture
def storage():
    return MatrixStorage()


def dense_text(entries, rows=2, cols=2, version=1):
    return json.dumps({"schema_version": version, "kind": "dense", "rows": rows, "cols": cols, "entries": entries})


def test_bundled_fixtures_are_listed(storage):
    assert {"identity", "nilpotent_2x2", "block_example", "shift23"} <= set(storage.list_names())


def test_dense_fixture_loads(storage):
    np.testing.assert_array_equal(storage.load("nilpotent_2x2"), np.array([[0.0, 1.0], [0.0, 0.0]]))
    np.testing.assert_array_equal(storage.load("identity.json"), np.eye(3))


def test_block_fixture_loads(storage):
    A = storage.load("block_example")
    assert isinstance(A, BlockOperatorMatrix)
    assert (A.n, A.d) == (2, 2)
    np.testing.assert_array_equal(A.block(0, 1), [[0.0, 1.0], [0.0, 0.0]])
    np.testing.assert_array_equal(A.block(0, 0), np.zeros((2, 2)))


@pytest.mark.parametrize("name", ["identity", "nilpotent_2x2", "block_example", "shift23"])
def test_fixtures_are_stored_canonically(storage, name):
    text = storage.path(name).read_text(encoding="utf-8")
    assert dumps_matrix(loads_matrix(text)) == text


def test_rewrite_is_byte_identical(tmp_path):
    rng = np.random.default_rng(40)
    matrix = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    first = save_matrix(tmp_path / "a.json", matrix).read_bytes()
    second = save_matrix(tmp_path / "b.json", load_matrix(tmp_path / "a.json")).read_bytes()
    assert first == second
    np.testing.assert_array_equal(load_matrix(tmp_path / "a.json"), matrix)


def test_block_rewrite_is_byte_identical(tmp_path):
    rng = np.random.default_rng(41)
    A = BlockOperatorMatrix.from_flat(rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6)), 3)
    storage = MatrixStorage(tmp_path)
    storage.save("random_block", A)
    text = storage.path("random_block").read_text(encoding="utf-8")
    assert dumps_matrix(storage.load("random_block")) == text
    assert storage.list_names() == ["random_block"]


def test_negative_zero_written_as_zero():
    text = dumps_matrix(np.array([[-0.0 + 0.0j]]))
    assert "-0" not in text


def test_rectangular_dense_matrix_round_trips():
    text = dumps_matrix(np.ones((2, 3)))
    assert loads_matrix(text).shape == (2, 3)


def test_serializer_rejects_bad_arrays():
    with pytest.raises(WRadiusError):
        dumps_matrix(np.ones(3))
    with pytest.raises(WRadiusError):
        dumps_matrix(np.array([[np.inf]]))


@pytest.mark.parametrize("text", [
    "{not json",
    dense_text([[[0, 0], [1, 0]]]),
    dense_text([[[0, 0], [1, 0]], [[0, 0], [0, 0]]], version=2),
    dense_text([[[0, 0], [1, 0]], [[0, 0], [0]]]),
    dense_text([[[0, 0], [1, 0]], [[0, 0], ["x", 0]]]),
    dense_text([[[True, False], [1, 0]], [[0, 0], [0, 0]]]),
    json.dumps({"schema_version": 1, "kind": "dense", "entries": []}),
    json.dumps({"schema_version": 1, "kind": "block", "n": 1, "entries": []}),
    json.dumps({"schema_version": 1, "kind": "sparse", "rows": 1, "cols": 1, "entries": [[[1, 0]]]}),
    dense_text([], rows=0, cols=0),
])
def test_malformed_files_raise_parse_error(text):
    with pytest.raises(ParseError):
        loads_matrix(text)


def test_boolean_entries_are_not_numbers():
    with pytest.raises(ParseError, match="JSON numbers"):
        loads_matrix(dense_text([[[True, False]]], rows=1, cols=1))


def test_non_finite_entries_raise_parse_error():
    text = '{"schema_version": 1, "kind": "dense", "rows": 1, "cols": 1, "entries": [[[NaN, 0]]]}'
    with pytest.raises(ParseError):
        loads_matrix(text)


def test_missing_file_raises_parse_error(tmp_path):
    with pytest.raises(ParseError):
        load_matrix(tmp_path / "missing.json")


def test_parse_error_exit_code():
    assert ParseError("x").exit_code == 2
