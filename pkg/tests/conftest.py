"""Shared strategies and brute-force oracles for the test suite."""
from __future__ import annotations

import itertools
import time
from contextlib import contextmanager
from math import factorial

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from hgfam import IntegerMatrix

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")

_acceptance = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Context manager timing one acceptance criterion and recording its outcome."""
    lines = request.config.stash.setdefault(_acceptance, [])

    @contextmanager
    def run(number: int, title: str, seconds=None):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - t0
            if seconds is not None:
                assert elapsed < seconds, f"took {elapsed:.2f}s, bound is {seconds}s"
            ok = True
        finally:
            elapsed = time.perf_counter() - t0
            bound = f" (bound {seconds}s)" if seconds is not None else ""
            line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {elapsed:7.2f}s{bound}  {title}"
            lines.append((number, line))
            print(line)

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_acceptance, [])
    if not lines:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for _, line in sorted(lines):
        terminalreporter.write_line(line)


@st.composite
def int_matrices(draw, min_rows=1, max_rows=4, min_cols=1, max_cols=5, lo=-6, hi=6):
    d = draw(st.integers(min_rows, max_rows))
    n = draw(st.integers(min_cols, max_cols))
    rows = draw(st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=d, max_size=d))
    return IntegerMatrix(rows)


@st.composite
def configurations(draw, max_rows=3, max_cols=5, lo=0, hi=4, extra_cols=0):
    """Full rank matrices with ``n >= d``."""
    A = draw(int_matrices(1, max_rows, 1, max_cols + extra_cols, lo, hi)
             .filter(lambda M: M.cols >= M.rows and M.is_full_rank()))
    return A


@st.composite
def unimodular(draw, d, steps=6):
    """Random product of elementary integer row operations."""
    M = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(steps if d > 1 else 0):
        i, j = draw(st.sampled_from([(a, b) for a in range(d) for b in range(d) if a != b]))
        q = draw(st.integers(-2, 2))
        M[i] = [x + q * y for x, y in zip(M[i], M[j])]
    if draw(st.booleans()):
        M[0] = [-x for x in M[0]]
    return IntegerMatrix(M)


def hull_volume_dfact(A: IntegerMatrix) -> int:
    """``d!`` times the volume of conv(0, columns), via floating point qhull, rounded."""
    d = A.rows
    pts = np.array([[0] * d] + [list(c) for c in A.columns()], dtype=float)
    if d == 1:
        return int(round(pts.max() - pts.min()))
    return int(round(ConvexHull(pts).volume * factorial(d)))


def shoelace_dfact(points) -> int:
    """Twice the area of the convex hull of planar integer points (monotone chain)."""
    pts = sorted(set(map(tuple, points)))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    s = 0
    for i in range(len(hull)):
        x1, y1 = hull[i]
        x2, y2 = hull[(i + 1) % len(hull)]
        s += x1 * y2 - x2 * y1
    return abs(s)


def reachable(A: IntegerMatrix, grading, max_weight: int) -> set[tuple[int, ...]]:
    """All points of NA of grading at most ``max_weight``, by breadth-first closure."""
    cols = A.columns()
    w = lambda v: sum(x * y for x, y in zip(grading, v))
    zero = tuple([0] * A.rows)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for p in frontier:
            for c in cols:
                q = tuple(x + y for x, y in zip(p, c))
                if w(q) <= max_weight and q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def box_points(d, lo, hi):
    return itertools.product(range(lo, hi + 1), repeat=d)
