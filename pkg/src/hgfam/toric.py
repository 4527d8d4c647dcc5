"""Binomial Groebner bases and toric ideals.

Only pure binomials ``x^a - x^b`` occur. An S-polynomial or a reduction
step of such binomials is again a pure binomial or zero, so everything is
represented as a pair of exponent tuples and no coefficients are stored.

The toric ideal ``I_A`` is obtained from the lattice basis ideal of
``ker_Z(A)`` by saturating at every variable in turn. Saturation at
``x_i`` divides each element of a Groebner basis by its largest common
power of ``x_i``; this is valid for a graded reverse-lexicographic order
with ``x_i`` cheapest, provided the ideal is homogeneous for the grading
used. Lattice ideals are homogeneous for the weights ``w . a_j`` of any
positive grading ``w``, so the order is weighted accordingly.
"""
from __future__ import annotations

import heapq
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import DimensionError, GradingError, ResourceLimitError
from .lattice import IntegerMatrix, kernel_basis
from .lp import minimize

__all__ = [
    "Binomial",
    "MonomialOrder",
    "DEFAULT_PAIR_LIMIT",
    "reduce",
    "buchberger",
    "saturate",
    "toric_generators",
    "ideals_equal",
    "spair_residues",
    "parse_binomial",
]

DEFAULT_PAIR_LIMIT = 100_000

Monomial = tuple[int, ...]


def pair_limit_default() -> int:
    env = os.environ.get("HGFAM_PAIR_LIMIT")
    return int(env) if env else DEFAULT_PAIR_LIMIT


def _render_monomial(m: Monomial, sep: str = " ") -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"d{i + 1}")
        elif e > 1:
            parts.append(f"d{i + 1}^{e}")
    return sep.join(parts) if parts else "1"


@dataclass(frozen=True)
class Binomial:
    """The binomial ``d^plus - d^minus`` in the variables ``d1..dn``."""

    plus: Monomial
    minus: Monomial

    def __post_init__(self):
        if len(self.plus) != len(self.minus):
            raise DimensionError("exponent vectors of different lengths")
        if any(e < 0 for e in self.plus) or any(e < 0 for e in self.minus):
            raise ValueError("exponents must be nonnegative")

    @classmethod
    def from_vector(cls, u: Sequence[int]) -> "Binomial":
        """``d^{u+} - d^{u-}``, with disjoint supports."""
        return cls(tuple(max(x, 0) for x in u), tuple(max(-x, 0) for x in u))

    @property
    def n(self) -> int:
        return len(self.plus)

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.plus, self.minus))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, (a, b) in enumerate(zip(self.plus, self.minus)) if a or b)

    def is_zero(self) -> bool:
        return self.plus == self.minus

    def is_normalized(self) -> bool:
        return all(min(a, b) == 0 for a, b in zip(self.plus, self.minus))

    def oriented(self, order: "MonomialOrder") -> "Binomial":
        """Same binomial up to sign, with ``plus`` the leading monomial."""
        if order.key(self.plus) >= order.key(self.minus):
            return self
        return Binomial(self.minus, self.plus)

    def render(self, sep: str = " ") -> str:
        return f"{_render_monomial(self.plus, sep)} - {_render_monomial(self.minus, sep)}"

    def __str__(self):
        return self.render()


_TOKEN = re.compile(r"^d(\d+)(?:\^(\d+))?$")


def _parse_monomial(text: str, n: Optional[int]) -> dict[int, int]:
    exps: dict[int, int] = {}
    tokens = text.replace("*", " ").split()
    if not tokens:
        raise ValueError("empty monomial")
    if tokens == ["1"]:
        return exps
    for tok in tokens:
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad monomial token {tok!r}")
        i = int(m.group(1))
        if i < 1 or (n is not None and i > n):
            raise ValueError(f"variable d{i} out of range")
        exps[i - 1] = exps.get(i - 1, 0) + int(m.group(2) or 1)
    return exps


def parse_binomial(text: str, n: Optional[int] = None) -> Binomial:
    """Inverse of :meth:`Binomial.render`, e.g. ``"d1^2 d3 - d2^3"``."""
    parts = text.split(" - ")
    if len(parts) != 2:
        raise ValueError(f"expected 'monomial - monomial', got {text!r}")
    left = _parse_monomial(parts[0].strip(), n)
    right = _parse_monomial(parts[1].strip(), n)
    if n is None:
        n = max([i + 1 for i in (*left, *right)], default=1)
    return Binomial(
        tuple(left.get(i, 0) for i in range(n)), tuple(right.get(i, 0) for i in range(n))
    )


@dataclass(frozen=True)
class MonomialOrder:
    """Weighted graded reverse-lexicographic order.

    Monomials compare first by ``weights``-degree, ties broken reverse
    lexicographically along ``permutation`` (its last entry is the
    cheapest variable). Default weights are all ones.
    """

    n: int
    weights: tuple[int, ...] = ()
    permutation: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.weights:
            object.__setattr__(self, "weights", (1,) * self.n)
        if not self.permutation:
            object.__setattr__(self, "permutation", tuple(range(self.n)))
        if len(self.weights) != self.n or sorted(self.permutation) != list(range(self.n)):
            raise ValueError("weights/permutation do not match the number of variables")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "_rev", tuple(reversed(self.permutation)))

    def with_last(self, i: int) -> "MonomialOrder":
        """Same weights, variable ``i`` made cheapest."""
        perm = tuple(v for v in range(self.n) if v != i) + (i,)
        return MonomialOrder(self.n, self.weights, perm)

    def key(self, m: Monomial) -> tuple:
        deg = 0
        for w, e in zip(self.weights, m):
            deg += w * e
        return (deg,) + tuple(-m[v] for v in self._rev)


# Internal representation: (lead, trail) with key(lead) > key(trail).

def _divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _orient(p: Monomial, q: Monomial, key):
    if p == q:
        return None
    return (p, q) if key(p) > key(q) else (q, p)


def _find_divisor(m: Monomial, basis):
    for g in basis:
        if _divides(g[0], m):
            return g
    return None


def _reduce(lead, trail, basis, key):
    """Full normal form of ``lead - trail``; ``None`` means zero."""
    while True:
        g = _find_divisor(lead, basis)
        if g is None:
            break
        new = tuple(a - b + c for a, b, c in zip(lead, g[0], g[1]))
        pair = _orient(new, trail, key)
        if pair is None:
            return None
        lead, trail = pair
    while True:
        g = _find_divisor(trail, basis)
        if g is None:
            break
        trail = tuple(a - b + c for a, b, c in zip(trail, g[0], g[1]))
    return lead, trail


def _spoly(f, g):
    L = tuple(max(a, b) for a, b in zip(f[0], g[0]))
    p = tuple(l - a + b for l, a, b in zip(L, f[0], f[1]))
    q = tuple(l - a + b for l, a, b in zip(L, g[0], g[1]))
    return p, q


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _interreduce(basis, key):
    basis = sorted(set(basis), key=lambda g: key(g[0]))
    minimal = []
    for g in basis:
        if not any(_divides(h[0], g[0]) for h in minimal):
            minimal.append(g)
    out = []
    for g in minimal:
        others = [h for h in minimal if h is not g]
        trail = g[1]
        while True:
            h = _find_divisor(trail, others)
            if h is None:
                break
            trail = tuple(a - b + c for a, b, c in zip(trail, h[0], h[1]))
        out.append((g[0], trail))
    return sorted(out, key=lambda g: key(g[0]))


def _buchberger(gens, key, pair_limit):
    basis = []
    for g in gens:
        pair = _orient(g[0], g[1], key)
        if pair is not None and pair not in basis:
            basis.append(pair)
    heap = []
    pending = set()

    def lcm_key(i, j):
        return key(tuple(max(a, b) for a, b in zip(basis[i][0], basis[j][0])))

    def push_pairs(j):
        for i in range(j):
            heapq.heappush(heap, (lcm_key(i, j), i, j))
            pending.add((i, j))

    for j in range(len(basis)):
        push_pairs(j)
    processed = 0
    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        f, g = basis[i], basis[j]
        if _coprime(f[0], g[0]):
            continue
        L = tuple(max(a, b) for a, b in zip(f[0], g[0]))
        chain = False
        for k, h in enumerate(basis):
            if k == i or k == j or not _divides(h[0], L):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                chain = True
                break
        if chain:
            continue
        processed += 1
        if processed > pair_limit:
            raise ResourceLimitError(f"more than {pair_limit} S-pairs processed (raise HGFAM_PAIR_LIMIT)")
        p, q = _spoly(f, g)
        pair = _orient(p, q, key)
        if pair is None:
            continue
        red = _reduce(pair[0], pair[1], basis, key)
        if red is None:
            continue
        basis.append(red)
        push_pairs(len(basis) - 1)
    return _interreduce(basis, key)


def _internal(G: Iterable[Binomial]):
    return [(b.plus, b.minus) for b in G if not b.is_zero()]


def _common_n(*groups) -> int:
    ns = {b.n for grp in groups for b in grp}
    if len(ns) > 1:
        raise DimensionError("binomials over different numbers of variables")
    return ns.pop() if ns else 0


def reduce(b: Binomial, G: Iterable[Binomial], order: MonomialOrder) -> Optional[Binomial]:
    """Normal form of ``b`` modulo ``G``; ``None`` stands for zero.

    The result is fully reduced, but it is a canonical normal form only
    when ``G`` is a Groebner basis for ``order``.
    """
    basis = [_orient(p, q, order.key) for p, q in _internal(G)]
    basis = [g for g in basis if g is not None]
    pair = _orient(b.plus, b.minus, order.key)
    if pair is None:
        return None
    red = _reduce(pair[0], pair[1], basis, order.key)
    return None if red is None else Binomial(*red)


def buchberger(G: Iterable[Binomial], order: MonomialOrder,
               pair_limit: Optional[int] = None) -> list[Binomial]:
    """Reduced Groebner basis of the ideal generated by ``G``.

    Pairs are processed smallest lcm first, skipping those removed by the
    coprime-leading-term and chain criteria. The output is sorted by
    leading monomial and each element has ``plus`` as its leading term.

    Raises:
        ResourceLimitError: if more than ``pair_limit`` S-pairs get reduced.
    """
    limit = pair_limit_default() if pair_limit is None else pair_limit
    return [Binomial(*g) for g in _buchberger(_internal(G), order.key, limit)]


def spair_residues(G: Sequence[Binomial], order: MonomialOrder) -> list[Binomial]:
    """Nonzero normal forms of all S-pairs of ``G`` (empty for a Groebner basis)."""
    basis = [_orient(b.plus, b.minus, order.key) for b in G]
    basis = [g for g in basis if g is not None]
    out = []
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            p, q = _spoly(basis[i], basis[j])
            pair = _orient(p, q, order.key)
            if pair is None:
                continue
            red = _reduce(pair[0], pair[1], basis, order.key)
            if red is not None:
                out.append(Binomial(*red))
    return out


def homogenizing_weights(G: Sequence[Binomial]) -> tuple[int, ...]:
    """Positive integer weights making every binomial of ``G`` homogeneous.

    Raises:
        GradingError: if the exponent differences admit no such weights.
    """
    n = _common_n(G)
    vecs = [b.vector for b in G if not b.is_zero()]
    if not vecs:
        return (1,) * n
    # weights = 1 + x with x >= 0, and  u . weights = 0 for every u
    rows = [list(u) for u in vecs]
    rhs = [-sum(u) for u in vecs]
    sol = minimize(rows, rhs)
    if sol is None:
        raise GradingError("no positive weights make the binomials homogeneous")
    w = [1 + x for x in sol]
    den = 1
    for x in w:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(x * den) for x in w]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def _strip(basis, i):
    out = []
    changed = False
    for lead, trail in basis:
        k = min(lead[i], trail[i])
        if k:
            changed = True
            lead = lead[:i] + (lead[i] - k,) + lead[i + 1:]
            trail = trail[:i] + (trail[i] - k,) + trail[i + 1:]
        out.append((lead, trail))
    return out, changed


def saturate(G: Sequence[Binomial], weights: Optional[Sequence[int]] = None,
             pair_limit: Optional[int] = None) -> list[Binomial]:
    """Generators of ``<G> : (d1 d2 ... dn)^inf``.

    ``G`` must be homogeneous for ``weights`` (found by LP when omitted).
    Each pass saturates at every variable in turn; passes repeat until one
    strips nothing.
    """
    G = list(G)
    n = _common_n(G)
    if not G:
        return []
    w = tuple(weights) if weights is not None else homogenizing_weights(G)
    limit = pair_limit_default() if pair_limit is None else pair_limit
    for b in G:
        if sum(a * x for a, x in zip(w, b.vector)) != 0:
            raise ValueError(f"{b} is not homogeneous for weights {w}")
    base = MonomialOrder(n, w)
    basis = _internal(G)
    while True:
        any_change = False
        for i in range(n):
            key = base.with_last(i).key
            basis = _buchberger(basis, key, limit)
            basis, changed = _strip(basis, i)
            any_change |= changed
        if not any_change:
            break
    basis = _buchberger(basis, base.key, limit)
    return [Binomial(*g) for g in basis]


def toric_generators(A: IntegerMatrix, pair_limit: Optional[int] = None) -> list[Binomial]:
    """Reduced Groebner basis of the toric ideal ``I_A``.

    The order is graded reverse lexicographic, weighted by ``w . a_j`` for
    the positive grading ``w`` of :func:`hgfam.semigroup.positive_grading`.
    For configurations with a row of ones this is the usual degree.

    Raises:
        GradingError: if ``NA`` is not pointed.
        ResourceLimitError: if a Groebner computation exceeds its budget.
    """
    from .semigroup import positive_grading

    A.require_full_rank()
    grading = positive_grading(A)
    weights = tuple(sum(g * x for g, x in zip(grading, col)) for col in A.columns())
    lattice = [Binomial.from_vector(u) for u in kernel_basis(A)]
    return saturate(lattice, weights, pair_limit)


def toric_order(A: IntegerMatrix) -> MonomialOrder:
    """The order :func:`toric_generators` uses for ``A``."""
    from .semigroup import positive_grading

    grading = positive_grading(A)
    return MonomialOrder(A.cols, tuple(sum(g * x for g, x in zip(grading, c)) for c in A.columns()))


def ideals_equal(G1: Sequence[Binomial], G2: Sequence[Binomial],
                 order: Optional[MonomialOrder] = None,
                 pair_limit: Optional[int] = None) -> bool:
    """True iff ``G1`` and ``G2`` generate the same ideal."""
    G1, G2 = list(G1), list(G2)
    n = _common_n(G1, G2)
    order = order or MonomialOrder(n)
    gb1 = buchberger(G1, order, pair_limit)
    gb2 = buchberger(G2, order, pair_limit)
    return all(reduce(b, gb2, order) is None for b in G1) and all(
        reduce(b, gb1, order) is None for b in G2
    )
