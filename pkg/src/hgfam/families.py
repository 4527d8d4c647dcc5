"""Constructors for the rank-jump families of configurations and parameters.

Every instance is built from four base pairs. ``A2``/``A3`` are the plain
rank-jump examples in two and three dimensions; ``H2``/``H3`` are their
"hatted" versions (first row doubled, column ``e_1`` prepended), whose
parameters are holes of the generated semigroup.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .lattice import IntegerMatrix, direct_sum, homogenize

__all__ = [
    "VARIANTS",
    "GlueColumn",
    "FamilyInstance",
    "decompose_d",
    "base_matrices",
    "plain_instance",
    "repeated_family",
    "product_family",
    "hat_family",
    "hat_family_homogenized",
    "make_instance",
]

VARIANTS = ("plain2", "plain3", "product", "hat", "hat_homogenized", "repeated")

A2 = IntegerMatrix([[1, 1, 1, 1], [0, 1, 3, 4]])
BETA2 = (1, 2)
A3 = IntegerMatrix([[1, 1, 1, 1, 1, 1], [0, 0, 0, 0, 1, 1], [0, 1, 3, 4, 0, 1]])
BETA3 = (1, 0, 2)
H2 = IntegerMatrix([[1, 2, 2, 2, 2], [0, 0, 1, 3, 4]])
HBETA2 = (3, 2)
H3 = IntegerMatrix([[1, 2, 2, 2, 2, 2, 2], [0, 0, 0, 0, 0, 1, 1], [0, 0, 1, 3, 4, 0, 1]])
HBETA3 = (3, 0, 2)


@dataclass(frozen=True)
class GlueColumn:
    """A column appended to the hat base matrix, with both of its definitions.

    All indices are 1-based column positions. The vector equals
    ``a[sum_of[0]] + a[sum_of[1]]`` and also
    ``(a[midpoint_of[0]] + a[midpoint_of[1]]) / 2``.
    """

    index: int
    vector: tuple[int, ...]
    sum_of: tuple[int, int]
    midpoint_of: tuple[int, int]


@dataclass(frozen=True)
class FamilyInstance:
    """One member of a family: the pair (A, beta) plus construction metadata.

    ``base_matrix`` is the direct sum the instance was built from (for the
    hat variants, the matrix before glue columns were appended). ``blocks``
    lists the column counts of the direct-sum blocks, with all glue columns
    gathered into one trailing block.
    """

    variant: str
    d: int
    r: int
    s: int
    matrix: IntegerMatrix
    parameter: tuple[Fraction, ...]
    base_matrix: IntegerMatrix
    blocks: tuple[int, ...]
    added_columns: tuple[GlueColumn, ...] = ()
    beta0: Optional[Fraction] = None
    base_rank: Optional[int] = None
    block_params: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def n(self) -> int:
        return self.matrix.cols


def _params(values) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


def decompose_d(d: int) -> tuple[int, int]:
    """The unique ``(r, s)`` with ``2r + 3s = d`` and ``s`` maximal."""
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"no decomposition for d={d}: need d >= 2")
    q, rem = divmod(d, 3)
    if rem == 0:
        return 0, q
    if rem == 2:
        return 1, q
    return 2, q - 1


def base_matrices() -> dict[str, tuple[IntegerMatrix, tuple[int, ...]]]:
    """The four base pairs keyed ``A2``, ``A3``, ``H2``, ``H3``."""
    return {"A2": (A2, BETA2), "A3": (A3, BETA3), "H2": (H2, HBETA2), "H3": (H3, HBETA3)}


def _sum_blocks(mats: Sequence[IntegerMatrix]) -> IntegerMatrix:
    out = mats[0]
    for m in mats[1:]:
        out = direct_sum(out, m)
    return out


def plain_instance(d: int) -> FamilyInstance:
    """Example pair in dimension 2 (``plain2``) or 3 (``plain3``)."""
    if d == 2:
        return FamilyInstance("plain2", 2, 1, 0, A2, _params(BETA2), A2, (4,), block_params=(BETA2,))
    if d == 3:
        return FamilyInstance("plain3", 3, 0, 1, A3, _params(BETA3), A3, (6,), block_params=(BETA3,))
    raise ValueError("plain instances exist only for d = 2 and d = 3")


def repeated_family(A: IntegerMatrix, beta: Sequence, r: int, base_rank: Optional[int] = None) -> FamilyInstance:
    """Direct sum of ``r`` copies of ``A`` with ``r`` copies of ``beta``.

    ``base_rank``, if known, is the holonomic rank of the single copy and
    lets :func:`hgfam.system.predicted_stats` scale it.
    """
    if r < 1:
        raise ValueError("need at least one copy")
    if len(beta) != A.rows:
        raise ValueError("parameter length does not match the number of rows")
    M = _sum_blocks([A] * r)
    return FamilyInstance(
        "repeated", A.rows * r, r, 0, M, _params(tuple(beta) * r), M, (A.cols,) * r,
        base_rank=base_rank, block_params=(tuple(beta),) * r,
    )


def product_family(d: int) -> FamilyInstance:
    r, s = decompose_d(d)
    M = _sum_blocks([A2] * r + [A3] * s)
    beta = BETA2 * r + BETA3 * s
    return FamilyInstance(
        "product", d, r, s, M, _params(beta), M, (4,) * r + (6,) * s,
        block_params=(BETA2,) * r + (BETA3,) * s,
    )


def _glue_columns(base: IntegerMatrix, r: int, s: int) -> list[GlueColumn]:
    links = []  # 1-based column k of the partner block's first column
    if r >= 2:
        links += [5 * i + 1 for i in range(1, r)]
    if r >= 1 and s >= 1:
        # first column of the i-th H3 block; see the decisions log on indexing
        links += [5 * r + 7 * (i - 1) + 1 for i in range(1, s + 1)]
    if r == 0 and s >= 1:
        links += [7 * i + 1 for i in range(1, s)]
    cols = base.columns()
    out = []
    for offset, k in enumerate(links, start=1):
        vec = tuple(x + y for x, y in zip(cols[0], cols[k - 1]))
        out.append(GlueColumn(base.cols + offset, vec, (1, k), (2, k + 1)))
    return out


def hat_family(d: int) -> FamilyInstance:
    r, s = decompose_d(d)
    base = _sum_blocks([H2] * r + [H3] * s)
    glue = _glue_columns(base, r, s)
    M = base.with_columns(g.vector for g in glue) if glue else base
    blocks = (5,) * r + (7,) * s + ((len(glue),) if glue else ())
    beta = HBETA2 * r + HBETA3 * s
    return FamilyInstance(
        "hat", d, r, s, M, _params(beta), base, blocks, tuple(glue),
        block_params=(HBETA2,) * r + (HBETA3,) * s,
    )


def hat_family_homogenized(d: int, beta0=0) -> FamilyInstance:
    """Homogenized hat matrix with parameter ``(beta0, beta_hat)``."""
    inst = hat_family(d)
    b0 = Fraction(beta0)
    return FamilyInstance(
        "hat_homogenized", d, inst.r, inst.s, homogenize(inst.matrix),
        (b0,) + inst.parameter, inst.base_matrix, (1,) + inst.blocks,
        inst.added_columns, beta0=b0, block_params=inst.block_params,
    )


def make_instance(variant: str, d: Optional[int] = None, beta0=0) -> FamilyInstance:
    """Dispatch on a variant name; ``hat-h`` is accepted for ``hat_homogenized``."""
    variant = variant.replace("-", "_")
    if variant == "hat_h":
        variant = "hat_homogenized"
    if variant == "plain2":
        return plain_instance(2)
    if variant == "plain3":
        return plain_instance(3)
    if d is None:
        raise ValueError(f"variant {variant!r} needs a dimension d")
    if variant == "product":
        return product_family(d)
    if variant == "hat":
        return hat_family(d)
    if variant == "hat_homogenized":
        return hat_family_homogenized(d, beta0)
    raise ValueError(f"unknown variant {variant!r}")
