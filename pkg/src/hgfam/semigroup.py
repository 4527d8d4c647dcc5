"""Membership, holes and equality for affine semigroups ``NA``.

All searches are bounded by a positive grading ``w`` (``w . a_j >= 1`` for
every column), so the residual weight strictly drops with each column
subtracted and depth-first search terminates.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence, Union

from .errors import DimensionError, GradingError
from .lattice import IntegerMatrix
from .lp import minimize

__all__ = [
    "GradedSemigroup",
    "positive_grading",
    "semigroup_member",
    "is_hole",
    "semigroups_equal",
]

DEFAULT_CACHE_LIMIT = 10**6


def positive_grading(A: IntegerMatrix) -> tuple[int, ...]:
    """An integer vector ``w`` with ``w . a_j > 0`` for every column ``a_j``.

    A strictly positive row of ``A`` is returned as a unit vector when one
    exists; otherwise ``sum_j w . a_j`` is minimized subject to
    ``w . a_j >= 1`` and the optimum is scaled to a primitive integer
    vector.

    Raises:
        GradingError: if the columns admit no positive grading.
    """
    d = A.rows
    for i, row in enumerate(A.entries):
        if all(x > 0 for x in row):
            return tuple(int(k == i) for k in range(d))
    cols = A.columns()
    n = len(cols)
    # variables: w_plus (d), w_minus (d), slack (n);  a_j.(w+ - w-) - s_j = 1
    rows = []
    for j, a in enumerate(cols):
        rows.append(list(a) + [-x for x in a] + [-int(k == j) for k in range(n)])
    totals = [sum(row[i] for row in cols) for i in range(d)] if cols else [0] * d
    cost = totals + [-x for x in totals] + [0] * n
    sol = minimize(rows, [1] * n, cost)
    if sol is None:
        raise GradingError()
    w = [sol[i] - sol[d + i] for i in range(d)]
    den = 1
    for x in w:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(x * den) for x in w]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


class GradedSemigroup:
    """The semigroup ``NA`` with a positive grading and a failure cache.

    The cache maps residual vectors already shown to lie outside ``NA``.
    It is bounded by ``cache_limit`` entries; failures found once it is
    full are remembered only for the duration of one query. Instances are
    not safe to share between threads without external locking.
    """

    def __init__(self, A: IntegerMatrix, grading: Optional[Sequence[int]] = None,
                 cache_limit: int = DEFAULT_CACHE_LIMIT):
        self.matrix = A
        w = tuple(grading) if grading is not None else positive_grading(A)
        if len(w) != A.rows:
            raise DimensionError("grading length does not match the number of rows")
        self.grading = w
        self._cols = A.columns()
        self._weights = [sum(x * y for x, y in zip(w, a)) for a in self._cols]
        if any(x < 1 for x in self._weights):
            raise GradingError("grading is not positive on every column")
        # heavier columns first; stable on index for determinism
        self._order = sorted(range(len(self._cols)), key=lambda j: -self._weights[j])
        self.cache_limit = cache_limit
        self.membership_cache: set[tuple[int, ...]] = set()

    def weight(self, b: Sequence[int]) -> int:
        return sum(x * y for x, y in zip(self.grading, b))

    def member(self, b: Sequence[int]) -> Optional[tuple[int, ...]]:
        """A witness ``u`` in ``N^n`` with ``A u = b``, or ``None``."""
        b = tuple(int(x) for x in b)
        if len(b) != self.matrix.rows:
            raise DimensionError(f"vector of length {len(b)} for a semigroup in Z^{self.matrix.rows}")
        failed = self.membership_cache
        local: set[tuple[int, ...]] = set()
        cols, weights, order = self._cols, self._weights, self._order

        def is_failed(res):
            return res in failed or res in local

        def mark(res):
            if len(failed) < self.cache_limit:
                failed.add(res)
            else:
                local.add(res)

        wb = self.weight(b)
        if wb < 0 or is_failed(b):
            return None
        # frames: [residual, residual weight, position in `order` to try next]
        stack = [[b, wb, 0]]
        path: list[int] = []
        while stack:
            frame = stack[-1]
            res, wres, k = frame
            if wres == 0:
                if not any(res):
                    u = [0] * len(cols)
                    for j in path:
                        u[j] += 1
                    return tuple(u)
                mark(res)
                stack.pop()
                if path:
                    path.pop()
                continue
            pushed = False
            while k < len(order):
                j = order[k]
                k += 1
                wj = weights[j]
                if wj > wres:
                    continue
                nxt = tuple(x - y for x, y in zip(res, cols[j]))
                if is_failed(nxt):
                    continue
                frame[2] = k
                stack.append([nxt, wres - wj, 0])
                path.append(j)
                pushed = True
                break
            if not pushed:
                mark(res)
                stack.pop()
                if path:
                    path.pop()
        return None

    def is_hole(self, b: Sequence[int]) -> bool:
        b = tuple(b)
        if self.member(b) is not None:
            return False
        return all(
            self.member(tuple(x + y for x, y in zip(b, a))) is not None for a in self._cols
        )


def _as_semigroup(S: Union[GradedSemigroup, IntegerMatrix]) -> GradedSemigroup:
    return S if isinstance(S, GradedSemigroup) else GradedSemigroup(S)


def semigroup_member(S: Union[GradedSemigroup, IntegerMatrix], b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """A witness ``u >= 0`` with ``A u = b``, or ``None`` if ``b`` is not in ``NA``."""
    return _as_semigroup(S).member(b)


def is_hole(S: Union[GradedSemigroup, IntegerMatrix], b: Sequence[int]) -> bool:
    """True iff ``b`` is not in ``NA`` but ``b + s`` is, for every nonzero ``s`` in ``NA``.

    Only ``b + a_j`` is tested for each column: a nonzero ``s`` in ``NA``
    is ``a_j + s'`` for some column ``j`` and ``s'`` in ``NA``, so
    ``b + s = (b + a_j) + s'`` stays in ``NA`` by closure under addition.
    """
    return _as_semigroup(S).is_hole(b)


def semigroups_equal(A: IntegerMatrix, B: IntegerMatrix) -> bool:
    """True iff ``NA == NB``, checked by mutual membership of the columns."""
    if A.rows != B.rows:
        raise DimensionError("matrices live in different dimensions")
    SA, SB = GradedSemigroup(A), GradedSemigroup(B)
    return all(SA.member(c) is not None for c in B.columns()) and all(
        SB.member(c) is not None for c in A.columns()
    )
