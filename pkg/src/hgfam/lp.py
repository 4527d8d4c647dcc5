"""Exact rational linear programming.

A dense two-phase tableau simplex over :class:`fractions.Fraction` using
Bland's rule, which cannot cycle. Problem sizes here are tiny (tens of
rows and columns), so no attempt is made at sparsity.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


class UnboundedError(ValueError):
    """The objective is unbounded below on the feasible region."""


def _pivot(T, obj, basis, r, c):
    row = T[r]
    p = row[c]
    if p != 1:
        T[r] = row = [x / p for x in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                T[i] = [a - f * b for a, b in zip(other, row)]
    f = obj[c]
    if f:
        obj[:] = [a - f * b for a, b in zip(obj, row)]
    basis[r] = c


def _run(T, obj, basis, allowed):
    """Minimize; ``obj`` holds reduced costs and minus the objective value last."""
    while True:
        enter = next((j for j in allowed if obj[j] < 0), None)
        if enter is None:
            return
        best = None
        for i, row in enumerate(T):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise UnboundedError("objective unbounded")
        _pivot(T, obj, basis, best[1], enter)


def minimize(
    A_eq: Sequence[Sequence],
    b_eq: Sequence,
    c: Optional[Sequence] = None,
) -> Optional[tuple[Fraction, ...]]:
    """Solve ``min c.x`` subject to ``A_eq x = b_eq``, ``x >= 0`` exactly.

    Returns an optimal basic solution, or ``None`` if the system is
    infeasible. With ``c`` omitted this is a pure feasibility check.

    Raises:
        UnboundedError: if ``c`` is given and unbounded below.
    """
    m = len(A_eq)
    n = len(A_eq[0]) if m else (len(c) if c is not None else 0)
    if m == 0:
        if c is not None and any(Fraction(x) < 0 for x in c):
            raise UnboundedError("objective unbounded")
        return tuple(Fraction(0) for _ in range(n))

    T = []
    for i in range(m):
        row = [Fraction(x) for x in A_eq[i]]
        rhs = Fraction(b_eq[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        art = [Fraction(int(k == i)) for k in range(m)]
        T.append(row + art + [rhs])
    basis = list(range(n, n + m))

    # phase 1: minimize the sum of artificials
    obj = [Fraction(0)] * (n + m + 1)
    for row in T:
        for j in range(n):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    _run(T, obj, basis, range(n + m))
    if obj[-1] != 0:
        return None

    # drive remaining artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, obj, basis, i, j)
        i += 1
    T = [row[:n] + [row[-1]] for row in T]

    if c is not None:
        cost = [Fraction(x) for x in c]
        obj = cost + [Fraction(0)]
        for i, bj in enumerate(basis):
            f = obj[bj]
            if f:
                obj = [a - f * b for a, b in zip(obj, T[i])]
        _run(T, obj, basis, range(n))

    x = [Fraction(0)] * n
    for i, bj in enumerate(basis):
        x[bj] = T[i][-1]
    return tuple(x)


def feasible_point(A_eq, b_eq) -> Optional[tuple[Fraction, ...]]:
    """Some ``x >= 0`` with ``A_eq x = b_eq``, or ``None``."""
    return minimize(A_eq, b_eq)
