"""Reading and writing matrices and vectors.

Two matrix encodings are supported. The text form is a header line
``"d n"`` followed by ``d`` lines of ``n`` integers. The document form is
``{"rows": d, "cols": n, "entries": [[...], ...]}``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import DimensionError
from .lattice import IntegerMatrix


def format_matrix_text(A: IntegerMatrix) -> str:
    lines = [f"{A.rows} {A.cols}"]
    lines += [" ".join(str(x) for x in row) for row in A.entries]
    return "\n".join(lines) + "\n"


def parse_matrix_text(text: str) -> IntegerMatrix:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty matrix text")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"bad header line: {lines[0]!r}")
    d, n = int(header[0]), int(header[1])
    body = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    if len(body) != d or any(len(r) != n for r in body):
        raise DimensionError(f"header says {d}x{n} but body does not match")
    return IntegerMatrix(body)


def matrix_to_dict(A: IntegerMatrix) -> dict:
    return {"rows": A.rows, "cols": A.cols, "entries": A.tolist()}


def matrix_from_dict(doc: dict) -> IntegerMatrix:
    A = IntegerMatrix(doc["entries"])
    if A.shape != (doc.get("rows", A.rows), doc.get("cols", A.cols)):
        raise DimensionError("declared shape does not match entries")
    return A


def parse_matrix(text: str) -> IntegerMatrix:
    """Parse either encoding, detected by the first non-blank character."""
    if text.lstrip().startswith("{"):
        return matrix_from_dict(json.loads(text))
    return parse_matrix_text(text)


def load_matrix(path) -> IntegerMatrix:
    return parse_matrix(Path(path).read_text())


def parse_int_vector(csv: str) -> tuple[int, ...]:
    """Parse ``"3,2"`` into ``(3, 2)``."""
    parts = [p.strip() for p in csv.split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValueError(f"bad integer vector: {csv!r}")
    return tuple(int(p) for p in parts)


def parse_rational_vector(csv: str) -> tuple[Fraction, ...]:
    parts = [p.strip() for p in csv.split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValueError(f"bad vector: {csv!r}")
    return tuple(Fraction(p) for p in parts)


def fraction_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
