from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from hgfam import (
    ConfigPolytope,
    DimensionError,
    IntegerMatrix,
    RankError,
    contains_point,
    direct_sum,
    lattice_index,
    normalized_volume,
    polytopes_equal,
    volume_dfact,
)
from hgfam.families import A2, A3, H2, H3
from hgfam.polytope import placing_triangulation

from conftest import configurations, hull_volume_dfact, shoelace_dfact, unimodular


@pytest.mark.parametrize("A, vol", [(A2, 4), (A3, 5), (H2, 8), (H3, 10)])
def test_base_volumes(A, vol):
    assert normalized_volume(A) == vol
    assert hull_volume_dfact(A) == vol * lattice_index(A)


def test_volume_with_index():
    # conv(0, 2e1, 2e2) has d! vol 4 and the lattice 2Z^2 has index 4
    assert normalized_volume(IntegerMatrix([[2, 0], [0, 2]])) == 1


def test_flat_and_rank_deficient():
    P = ConfigPolytope.from_points([(1, 1), (2, 2)])
    assert volume_dfact(P) == 0
    with pytest.raises(RankError):
        normalized_volume(IntegerMatrix([[1, 2], [2, 4]]))


def test_cached_volume():
    P = ConfigPolytope.from_matrix(H2, compute_volume=True)
    assert P.cached_volume_dfact == 8
    assert volume_dfact(P) == 8


def test_rational_points():
    P = ConfigPolytope.from_points([(Fraction(1, 2), 0), (0, Fraction(1, 3))])
    assert volume_dfact(P) == Fraction(1, 6)


@given(configurations())
def test_volume_against_qhull(A):
    assert normalized_volume(A) * lattice_index(A) == hull_volume_dfact(A)


@given(configurations(max_rows=2, max_cols=7, lo=-5, hi=5).filter(lambda A: A.rows == 2))
def test_volume_against_shoelace(A):
    pts = [(0, 0)] + A.columns()
    assert volume_dfact(ConfigPolytope.from_matrix(A)) == shoelace_dfact(pts)


@given(configurations(), st.randoms(use_true_random=False))
def test_column_permutation(A, rnd):
    cols = A.columns()
    rnd.shuffle(cols)
    assert normalized_volume(IntegerMatrix.from_columns(cols)) == normalized_volume(A)


@given(configurations(), st.data())
def test_unimodular_row_action(A, data):
    U = data.draw(unimodular(A.rows))
    assert normalized_volume(U @ A) == normalized_volume(A)


@given(configurations(), st.integers(2, 4), st.data())
def test_row_scaling(A, c, data):
    i = data.draw(st.integers(0, A.rows - 1))
    rows = [list(r) for r in A.entries]
    rows[i] = [c * x for x in rows[i]]
    B = IntegerMatrix(rows)
    assert volume_dfact(ConfigPolytope.from_matrix(B)) == c * volume_dfact(ConfigPolytope.from_matrix(A))
    assert normalized_volume(B) == normalized_volume(A)


@given(configurations(max_rows=2, max_cols=4), configurations(max_rows=2, max_cols=4))
def test_multiplicative(A, B):
    assert normalized_volume(direct_sum(A, B)) == normalized_volume(A) * normalized_volume(B)


@given(configurations())
def test_triangulation_uses_full_simplices(A):
    pts = [(0,) * A.rows] + A.columns()
    simplices = placing_triangulation(pts)
    assert simplices
    for s in simplices:
        assert len(set(s)) == A.rows + 1


def _lp_contains(gens, p):
    G = np.array(gens, dtype=float).T
    A_eq = np.vstack([G, np.ones(len(gens))])
    b_eq = np.array(list(p) + [1], dtype=float)
    res = linprog(np.zeros(len(gens)), A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * len(gens), method="highs")
    return res.status == 0


@given(configurations(), st.lists(st.integers(-1, 5), min_size=3, max_size=3))
def test_contains_point_against_scipy(A, p):
    p = p[: A.rows]
    P = ConfigPolytope.from_matrix(A)
    gens = [(0,) * A.rows] + A.columns()
    assert contains_point(P, p) == _lp_contains(gens, p)


def test_contains_point_boundary_and_dimension():
    P = ConfigPolytope.from_matrix(A2)
    assert contains_point(P, (Fraction(1, 2), 2))
    assert contains_point(P, (1, 4))
    assert not contains_point(P, (1, 5))
    with pytest.raises(DimensionError):
        contains_point(P, (1, 2, 3))


def test_polytopes_equal():
    assert polytopes_equal(A2, A2.with_columns([(1, 2)]))
    assert not polytopes_equal(A2, H2)
    with pytest.raises(DimensionError):
        polytopes_equal(A2, A3)
