"""Exact convex geometry of the polytope ``conv(0, a_1, ..., a_n)``."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence, Union

from .errors import DimensionError, InternalError
from .lattice import IntegerMatrix, _echelon, determinant, lattice_index, rational_rank
from .lp import feasible_point

__all__ = [
    "ConfigPolytope",
    "volume_dfact",
    "normalized_volume",
    "contains_point",
    "polytopes_equal",
    "placing_triangulation",
]

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class ConfigPolytope:
    """Convex hull of a finite point set that always includes the origin.

    ``cached_volume_dfact`` is ``d!`` times the Euclidean volume, filled at
    construction when requested so the instance never mutates afterwards.
    """

    ambient_dim: int
    generators: tuple[Point, ...]
    cached_volume_dfact: Optional[Union[int, Fraction]] = None

    @classmethod
    def from_points(cls, points, compute_volume: bool = False) -> "ConfigPolytope":
        pts = [tuple(Fraction(x) for x in p) for p in points]
        if not pts:
            raise DimensionError("at least one point is required to fix the dimension")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise DimensionError("points of different dimensions")
        origin = tuple(Fraction(0) for _ in range(d))
        gens = tuple([origin] + [p for p in pts if p != origin])
        vol = _volume_dfact(gens, d) if compute_volume else None
        return cls(d, gens, vol)

    @classmethod
    def from_matrix(cls, A: IntegerMatrix, compute_volume: bool = False) -> "ConfigPolytope":
        """Polytope ``Delta_A`` spanned by the origin and the columns of ``A``.

        Columns are kept in input order (after the origin), and that order is
        the insertion order of the placing triangulation.
        """
        d = A.rows
        origin = tuple(Fraction(0) for _ in range(d))
        gens = tuple([origin] + [tuple(Fraction(x) for x in c) for c in A.columns()])
        vol = _volume_dfact(gens, d) if compute_volume else None
        return cls(d, gens, vol)


def _scaled_integer_points(points: Sequence[Point]) -> tuple[list[tuple[int, ...]], int]:
    den = 1
    for p in points:
        for x in p:
            den = lcm(den, x.denominator)
    return [tuple(int(x * den) for x in p) for p in points], den


def _normal(points: Sequence[tuple[int, ...]]) -> tuple[int, ...]:
    """Primitive integer normal to the hyperplane through ``d`` points in ``Z^d``."""
    v0 = points[0]
    d = len(v0)
    diffs = [[a - b for a, b in zip(p, v0)] for p in points[1:]]
    ech = _echelon(diffs) if diffs else []
    if len(ech) != d - 1:
        raise InternalError("facet points are affinely dependent")
    pivots = []
    for row in ech:
        pivots.append(next(j for j, x in enumerate(row) if x != 0))
    free = next(j for j in range(d) if j not in pivots)
    x = [Fraction(0)] * d
    x[free] = Fraction(1)
    for row, pc in zip(reversed(ech), reversed(pivots)):
        s = sum(row[j] * x[j] for j in range(pc + 1, d))
        x[pc] = Fraction(-s) / row[pc]
    den = 1
    for v in x:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in x]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints)


def placing_triangulation(points: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Placing triangulation of integer points, as tuples of point indices.

    Points are inserted in the given order. An initial simplex is chosen
    greedily from the front of the list; each later point is coned over the
    boundary facets it sees strictly. Points on or inside the current hull
    add nothing. Returns an empty list if the points are not full
    dimensional.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        return []
    d = len(pts[0])
    chosen = [0]
    diffs: list[list[int]] = []
    for idx in range(1, len(pts)):
        if len(chosen) == d + 1:
            break
        diff = [a - b for a, b in zip(pts[idx], pts[0])]
        if rational_rank(diffs + [diff]) > len(diffs):
            diffs.append(diff)
            chosen.append(idx)
    if len(chosen) < d + 1:
        return []

    ref = [sum(pts[i][k] for i in chosen) for k in range(d)]  # (d+1) * interior point

    def oriented(face):
        verts = sorted(face)
        nrm = _normal([pts[i] for i in verts])
        off = sum(a * b for a, b in zip(nrm, pts[verts[0]]))
        if sum(a * b for a, b in zip(nrm, ref)) > (d + 1) * off:
            nrm = tuple(-a for a in nrm)
            off = -off
        return nrm, off

    simplices = [tuple(chosen)]
    facets = {}
    for v in chosen:
        face = frozenset(chosen) - {v}
        facets[face] = oriented(face)

    used = set(chosen)
    for idx, p in enumerate(pts):
        if idx in used:
            continue
        visible = [
            f for f, (nrm, off) in facets.items()
            if sum(a * b for a, b in zip(nrm, p)) > off
        ]
        if not visible:
            continue
        ridge_count: dict[frozenset, int] = {}
        for f in visible:
            simplices.append(tuple(sorted(f)) + (idx,))
            for v in f:
                ridge = f - {v}
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
            del facets[f]
        for ridge, cnt in ridge_count.items():
            if cnt == 1:
                face = ridge | {idx}
                facets[face] = oriented(face)
    return simplices


def _volume_dfact(gens: Sequence[Point], d: int) -> Union[int, Fraction]:
    ints, den = _scaled_integer_points(gens)
    total = 0
    for simplex in placing_triangulation(ints):
        v0 = ints[simplex[0]]
        rows = [[a - b for a, b in zip(ints[i], v0)] for i in simplex[1:]]
        total += abs(determinant(rows))
    result = Fraction(total, den ** d)
    return int(result) if result.denominator == 1 else result


def volume_dfact(P: ConfigPolytope) -> Union[int, Fraction]:
    """``d!`` times the Euclidean volume of ``P``; zero if ``P`` is flat."""
    if P.cached_volume_dfact is not None:
        return P.cached_volume_dfact
    return _volume_dfact(P.generators, P.ambient_dim)


def normalized_volume(A: IntegerMatrix) -> int:
    """``d! vol(Delta_A) / [Z^d : ZA]``, always a positive integer."""
    A.require_full_rank()
    vd = volume_dfact(ConfigPolytope.from_matrix(A))
    index = lattice_index(A)
    if not isinstance(vd, int) or vd % index:
        raise InternalError(f"d!*vol = {vd} is not divisible by the lattice index {index}")
    vol = vd // index
    if vol <= 0:
        raise InternalError("full rank matrix with zero volume")
    return vol


def contains_point(P: ConfigPolytope, p: Sequence) -> bool:
    """Exact test of ``p`` lying in the convex hull of ``P.generators``."""
    q = tuple(Fraction(x) for x in p)
    if len(q) != P.ambient_dim:
        raise DimensionError(f"point of dimension {len(q)} in a polytope of dimension {P.ambient_dim}")
    if q in P.generators:
        return True
    gens = P.generators
    rows = [[g[k] for g in gens] for k in range(P.ambient_dim)]
    rows.append([1] * len(gens))
    return feasible_point(rows, list(q) + [1]) is not None


def polytopes_equal(A: IntegerMatrix, B: IntegerMatrix) -> bool:
    """True iff ``Delta_A == Delta_B``, by mutual column containment."""
    if A.rows != B.rows:
        raise DimensionError("matrices live in different dimensions")
    PA = ConfigPolytope.from_matrix(A)
    PB = ConfigPolytope.from_matrix(B)
    return all(contains_point(PA, c) for c in B.columns()) and all(
        contains_point(PB, c) for c in A.columns()
    )
