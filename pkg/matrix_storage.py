"""
Matrix file storage
Reads and writes the self-describing JSON matrix format; complex entries are [re, im] pairs
"""
import json
from pathlib import Path
from typing import List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ValidationError, model_validator

import config
from linalg.block_matrix import BlockOperatorMatrix
from utils import ParseError, WRadiusError

Operand = Union[np.ndarray, BlockOperatorMatrix]


def _all_numbers(value) -> bool:
    # bool is a subclass of int
    if isinstance(value, list):
        return all(_all_numbers(item) for item in value)
    return isinstance(value, (int, float)) and not isinstance(value, bool)


class MatrixFile(BaseModel):
    """On-disk schema of a dense or block matrix"""
    schema_version: int
    kind: Literal["dense", "block"]
    rows: Optional[int] = None
    cols: Optional[int] = None
    n: Optional[int] = None
    d: Optional[int] = None
    entries: list

    @model_validator(mode="after")
    def check_shape(self) -> "MatrixFile":
        if self.schema_version != config.SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {self.schema_version}, expected {config.SCHEMA_VERSION}")

        if self.kind == "dense":
            if self.rows is None or self.cols is None:
                raise ValueError("dense files need rows and cols")
            expected = (self.rows, self.cols, 2)
        else:
            if self.n is None or self.d is None:
                raise ValueError("block files need n and d")
            expected = (self.n, self.n, self.d, self.d, 2)

        if min(expected[:-1]) < 1:
            raise ValueError(f"dimensions must be positive, got {expected[:-1]}")
        if not _all_numbers(self.entries):
            raise ValueError("entries must be JSON numbers")

        try:
            values = np.asarray(self.entries, dtype=np.float64)
        except (TypeError, ValueError) as e:
            raise ValueError(f"entries are not a regular array of numbers: {e}")

        if values.shape != expected:
            raise ValueError(f"entries have shape {values.shape}, expected {expected}")
        if not np.all(np.isfinite(values)):
            raise ValueError("entries must be finite")
        return self

    def to_operand(self) -> Operand:
        values = np.asarray(self.entries, dtype=np.float64)
        matrix = values[..., 0] + 1j * values[..., 1]
        if self.kind == "dense":
            return matrix
        return BlockOperatorMatrix(matrix)


def _number(x: float) -> str:
    text = format(float(x), f".{config.FORMAT_PRECISION}g")
    # -0.0 is written as 0
    return "0" if text == "-0" else text


def _row(row: np.ndarray) -> str:
    return "[" + ", ".join(f"[{_number(z.real)}, {_number(z.imag)}]" for z in row) + "]"


def dumps_matrix(operand: Operand) -> str:
    """Canonical text; parsing it back and writing again gives identical bytes"""
    lines = ["{", f'  "schema_version": {config.SCHEMA_VERSION},']

    if isinstance(operand, BlockOperatorMatrix):
        lines += ['  "kind": "block",', f'  "n": {operand.n},', f'  "d": {operand.d},', '  "entries": [']
        block_rows = []
        for i in range(operand.n):
            blocks = []
            for j in range(operand.n):
                rows = ",\n".join(f"        {_row(r)}" for r in operand.block(i, j))
                blocks.append("      [\n" + rows + "\n      ]")
            block_rows.append("    [\n" + ",\n".join(blocks) + "\n    ]")
        lines.append(",\n".join(block_rows))
    else:
        matrix = np.asarray(operand, dtype=np.complex128)
        if matrix.ndim != 2:
            raise WRadiusError(f"cannot serialize an array of shape {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise WRadiusError("cannot serialize NaN or infinite entries")
        rows, cols = matrix.shape
        lines += ['  "kind": "dense",', f'  "rows": {rows},', f'  "cols": {cols},', '  "entries": [']
        lines.append(",\n".join(f"    {_row(r)}" for r in matrix))

    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def loads_matrix(text: str, source: str = "<string>") -> Operand:
    """
    Parse matrix file text
    Raises ParseError on malformed JSON or a schema violation
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}: not valid JSON ({e})")

    try:
        return MatrixFile.model_validate(data).to_operand()
    except ValidationError as e:
        errors = "; ".join(err["msg"] for err in e.errors())
        raise ParseError(f"{source}: {errors}")


def load_matrix(path: Union[str, Path]) -> Operand:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}")
    return loads_matrix(text, str(path))


def save_matrix(path: Union[str, Path], operand: Operand) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_matrix(operand), encoding="utf-8")
    return path


class MatrixStorage:
    """Named matrix files inside one directory, such as the bundled fixtures"""

    def __init__(self, data_dir: Union[str, Path] = config.FIXTURES_DIR):
        self.data_dir = Path(data_dir)

    def path(self, name: str) -> Path:
        return self.data_dir / (name if name.endswith(".json") else f"{name}.json")

    def load(self, name: str) -> Operand:
        return load_matrix(self.path(name))

    def save(self, name: str, operand: Operand) -> Path:
        return save_matrix(self.path(name), operand)

    def list_names(self) -> List[str]:
        if not self.data_dir.exists():
            return []
        return sorted(p.stem for p in self.data_dir.glob("*.json"))
