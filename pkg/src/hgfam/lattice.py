"""Exact integer linear algebra on configuration matrices.

Matrices are immutable and hold Python ints, so every intermediate is
arbitrary precision. Columns are addressed 0-based in code; reports and
documentation use the 1-based convention ``a_1, ..., a_n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral
from typing import Iterable, Sequence

from .errors import DimensionError, RankError

__all__ = [
    "IntegerMatrix",
    "SmithDecomposition",
    "smith_normal_form",
    "lattice_index",
    "kernel_basis",
    "direct_sum",
    "homogenize",
    "is_homogeneous_configuration",
    "rational_rank",
    "determinant",
]

Vector = tuple[int, ...]


def _as_int(x) -> int:
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, Integral):
        return int(x)
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    if isinstance(x, float) and x.is_integer():
        return int(x)
    raise TypeError(f"non-integer matrix entry: {x!r}")


class IntegerMatrix:
    """An immutable d x n matrix over the integers.

    The plain constructor accepts any nonempty rectangular array. Use
    :meth:`configuration` for matrices that must have full row rank
    (the configurations ``A`` of a hypergeometric system).
    """

    __slots__ = ("_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]]):
        data = tuple(tuple(_as_int(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise DimensionError("matrix must have at least one row and one column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise DimensionError("ragged rows")
        self._rows = data
        self._hash = None

    @classmethod
    def configuration(cls, rows: Iterable[Iterable[int]]) -> "IntegerMatrix":
        """Build a matrix and check that it has full row rank."""
        m = cls(rows)
        m.require_full_rank()
        return m

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable[int]]) -> "IntegerMatrix":
        cols = [tuple(c) for c in columns]
        if not cols:
            raise DimensionError("matrix must have at least one column")
        return cls(zip(*cols))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> int:
        return len(self._rows)

    @property
    def cols(self) -> int:
        return len(self._rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[Vector, ...]:
        return self._rows

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self._rows)

    def columns(self) -> list[Vector]:
        return [tuple(c) for c in zip(*self._rows)]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(zip(*self._rows))

    def with_columns(self, extra: Iterable[Sequence[int]]) -> "IntegerMatrix":
        """Return a copy with ``extra`` columns appended on the right."""
        return IntegerMatrix.from_columns(self.columns() + [tuple(c) for c in extra])

    def select_columns(self, indices: Iterable[int]) -> "IntegerMatrix":
        cols = self.columns()
        return IntegerMatrix.from_columns(cols[j] for j in indices)

    def apply(self, v: Sequence[int]) -> Vector:
        """Matrix-vector product ``self @ v``."""
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self._rows)

    def __matmul__(self, other):
        if isinstance(other, IntegerMatrix):
            if self.cols != other.rows:
                raise DimensionError("inner dimensions differ")
            ocols = other.columns()
            return IntegerMatrix(
                [[sum(a * b for a, b in zip(row, col)) for col in ocols] for row in self._rows]
            )
        return self.apply(other)

    def rank(self) -> int:
        return rational_rank(self._rows)

    def is_full_rank(self) -> bool:
        return self.rank() == self.rows

    def require_full_rank(self) -> None:
        if not self.is_full_rank():
            raise RankError()

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._rows)
        return self._hash

    def __repr__(self):
        return f"IntegerMatrix({self.tolist()!r})"

    def __str__(self):
        width = max(len(str(x)) for row in self._rows for x in row)
        return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in self._rows)


def _echelon(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Fraction-free (Bareiss) row echelon form; returns the nonzero rows."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            row_i, row_r = m[i], m[r]
            for k in range(c, ncols):
                row_i[k] = (p * row_i[k] - f * row_r[k]) // prev
        prev = p
        r += 1
        if r == nrows:
            break
    return m[:r]


def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of an integer matrix given by rows."""
    if not rows:
        return 0
    return len(_echelon(rows))


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for c in range(n - 1):
        if m[c][c] == 0:
            swap = next((i for i in range(c + 1, n) if m[i][c] != 0), None)
            if swap is None:
                return 0
            m[c], m[swap] = m[swap], m[c]
            sign = -sign
        p = m[c][c]
        for i in range(c + 1, n):
            row_i, row_c = m[i], m[c]
            f = row_i[c]
            for k in range(c + 1, n):
                row_i[k] = (p * row_i[k] - f * row_c[k]) // prev
        prev = p
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ matrix @ right == diag`` with unimodular ``left``/``right``."""

    left: IntegerMatrix
    diag: IntegerMatrix
    right: IntegerMatrix

    @property
    def elementary_divisors(self) -> tuple[int, ...]:
        """Diagonal entries, zeros included, length ``min(d, n)``."""
        d, n = self.diag.shape
        return tuple(self.diag.row(i)[i] for i in range(min(d, n)))


def smith_normal_form(M: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form with transformation matrices.

    Pivoting always moves the smallest nonzero entry (by absolute value) of
    the active block into the corner, ties broken by lowest (row, column).
    Once the pivot row and column are clear, any active entry not divisible
    by the pivot is folded into the pivot row and the step repeats, which
    yields the divisibility chain ``d_1 | d_2 | ...``.
    """
    d, n = M.shape
    D = [list(r) for r in M.entries]
    U = [[int(i == j) for j in range(d)] for i in range(d)]
    # V is stored transposed: V_t[j] is column j of V, so column ops are row ops here.
    V_t = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in D:
            row[j], row[k] = row[k], row[j]
        V_t[j], V_t[k] = V_t[k], V_t[j]

    def add_row(target, source, q):
        # row_target += q * row_source
        D[target] = [a + q * b for a, b in zip(D[target], D[source])]
        U[target] = [a + q * b for a, b in zip(U[target], U[source])]

    def add_col(target, source, q):
        for row in D:
            row[target] += q * row[source]
        V_t[target] = [a + q * b for a, b in zip(V_t[target], V_t[source])]

    for t in range(min(d, n)):
        while True:
            best = None
            for i in range(t, d):
                row = D[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = D[t][t]
            for i in range(t + 1, d):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            if any(D[i][t] for i in range(t + 1, d)) or any(D[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, d) if any(D[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < d and t < n and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]

    V = [list(col) for col in zip(*V_t)]
    return SmithDecomposition(IntegerMatrix(U), IntegerMatrix(D), IntegerMatrix(V))


def lattice_index(A: IntegerMatrix) -> int:
    """Index ``[Z^d : ZA]`` of the lattice spanned by the columns of ``A``."""
    A.require_full_rank()
    prod = 1
    for x in smith_normal_form(A).elementary_divisors:
        prod *= x
    return prod


def kernel_basis(A: IntegerMatrix) -> list[Vector]:
    """A lattice basis of ``{u in Z^n : A u = 0}``.

    The basis is the trailing ``n - d`` columns of the right Smith factor,
    which is unimodular, so the basis is saturated.
    """
    A.require_full_rank()
    d, n = A.shape
    V = smith_normal_form(A).right
    return [V.column(j) for j in range(d, n)]


def direct_sum(A1: IntegerMatrix, A2: IntegerMatrix) -> IntegerMatrix:
    """Block-diagonal matrix ``[[A1, 0], [0, A2]]``."""
    n1, n2 = A1.cols, A2.cols
    top = [list(r) + [0] * n2 for r in A1.entries]
    bottom = [[0] * n1 + list(r) for r in A2.entries]
    return IntegerMatrix(top + bottom)


def homogenize(A: IntegerMatrix) -> IntegerMatrix:
    """Prepend a zero column to ``A``, then a row of ones on top."""
    A.require_full_rank()
    rows = [[1] * (A.cols + 1)]
    rows += [[0] + list(r) for r in A.entries]
    return IntegerMatrix(rows)


def is_homogeneous_configuration(A: IntegerMatrix) -> bool:
    """True iff the all-ones vector lies in the rational row span of ``A``.

    Equivalently, the toric ideal of ``A`` is homogeneous for the standard
    grading.
    """
    A.require_full_rank()
    return rational_rank(list(A.entries) + [[1] * A.cols]) == A.rows
