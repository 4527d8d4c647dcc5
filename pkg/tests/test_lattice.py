from math import gcd
from itertools import combinations

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from hgfam import (
    IntegerMatrix,
    RankError,
    direct_sum,
    homogenize,
    is_homogeneous_configuration,
    kernel_basis,
    lattice_index,
    smith_normal_form,
)
from hgfam.families import A2, A3, H2, H3
from hgfam.formats import (
    format_matrix_text,
    matrix_from_dict,
    matrix_to_dict,
    parse_int_vector,
    parse_matrix,
    parse_matrix_text,
    parse_rational_vector,
)
from hgfam.lattice import determinant, rational_rank

from conftest import configurations, int_matrices


def _det(M: IntegerMatrix) -> int:
    return int(sympy.Matrix(M.tolist()).det())


class TestIntegerMatrix:
    def test_rejects_non_integers(self):
        with pytest.raises(TypeError):
            IntegerMatrix([[1, 0.5]])

    def test_rejects_ragged_and_empty(self):
        with pytest.raises(ValueError):
            IntegerMatrix([[1, 2], [3]])
        with pytest.raises(ValueError):
            IntegerMatrix([])

    def test_configuration_requires_full_rank(self):
        with pytest.raises(RankError):
            IntegerMatrix.configuration([[1, 2], [2, 4]])

    def test_columns_and_products(self):
        A = A2
        assert A.shape == (2, 4)
        assert A.column(2) == (1, 3)
        assert A.apply((1, 0, 0, 1)) == (2, 4)
        assert (A @ IntegerMatrix.identity(4)) == A
        assert A.transpose().transpose() == A
        assert IntegerMatrix.from_columns(A.columns()) == A

    def test_hash_matches_equality(self):
        assert hash(A2) == hash(IntegerMatrix(A2.tolist()))


class TestSmith:
    def test_small(self):
        S = smith_normal_form(IntegerMatrix([[2, 0], [0, 3]]))
        assert S.elementary_divisors == (1, 6)

    @given(int_matrices())
    def test_decomposition(self, M):
        S = smith_normal_form(M)
        assert S.left @ M @ S.right == S.diag
        assert abs(_det(S.left)) == 1
        assert abs(_det(S.right)) == 1
        d, n = S.diag.shape
        for i in range(d):
            for j in range(n):
                if i != j:
                    assert S.diag.row(i)[j] == 0
        divs = S.elementary_divisors
        assert all(x >= 0 for x in divs)
        nz = [x for x in divs if x]
        assert divs[: len(nz)] == tuple(nz)
        for a, b in zip(nz, nz[1:]):
            assert b % a == 0

    @given(int_matrices(max_rows=4, max_cols=4))
    def test_divisors_agree_with_sympy(self, M):
        ours = [x for x in smith_normal_form(M).elementary_divisors if x]
        D = sympy_snf(sympy.Matrix(M.tolist()), domain=sympy.ZZ)
        theirs = [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]
        assert sorted(ours) == sorted(theirs)

    @given(int_matrices(max_rows=4, max_cols=4))
    def test_rank_matches_sympy(self, M):
        assert rational_rank(M.entries) == sympy.Matrix(M.tolist()).rank()

    @given(int_matrices(min_rows=3, max_rows=3, min_cols=3, max_cols=3))
    def test_determinant(self, M):
        assert determinant(M.entries) == _det(M)


def _gcd_of_maximal_minors(rows):
    k = len(rows)
    n = len(rows[0])
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, determinant([[r[c] for c in cols] for r in rows]))
    return g


class TestLatticeIndex:
    def test_base_matrices(self):
        assert lattice_index(A2) == 1
        assert lattice_index(H2) == 1
        assert lattice_index(IntegerMatrix([[2, 0], [0, 3]])) == 6

    @given(configurations())
    def test_equals_gcd_of_maximal_minors(self, A):
        assert lattice_index(A) == _gcd_of_maximal_minors(A.entries)

    @given(configurations(max_rows=2), configurations(max_rows=2))
    def test_multiplicative(self, A, B):
        assert lattice_index(direct_sum(A, B)) == lattice_index(A) * lattice_index(B)

    @given(configurations(), st.integers(2, 5), st.data())
    def test_row_scaling(self, A, c, data):
        i = data.draw(st.integers(0, A.rows - 1))
        rows = [list(r) for r in A.entries]
        rows[i] = [c * x for x in rows[i]]
        assert lattice_index(IntegerMatrix(rows)) == c * lattice_index(A)

    def test_rank_deficient(self):
        with pytest.raises(RankError):
            lattice_index(IntegerMatrix([[1, 1], [1, 1]]))


class TestKernel:
    def test_A2(self):
        assert kernel_basis(A2) == [(2, -3, 1, 0), (3, -4, 0, 1)]

    @given(configurations(extra_cols=2))
    def test_kernel_is_saturated_basis(self, A):
        K = kernel_basis(A)
        assert len(K) == A.cols - A.rows
        for u in K:
            assert A.apply(u) == (0,) * A.rows
        if K:
            # saturated iff the maximal minors of the basis are coprime
            assert _gcd_of_maximal_minors(K) == 1


class TestHomogeneity:
    def test_base_matrices(self):
        assert is_homogeneous_configuration(A2)
        assert is_homogeneous_configuration(A3)
        assert not is_homogeneous_configuration(H2)
        assert not is_homogeneous_configuration(H3)

    @given(configurations())
    def test_homogenize(self, A):
        H = homogenize(A)
        assert H.shape == (A.rows + 1, A.cols + 1)
        assert H.row(0) == (1,) * (A.cols + 1)
        assert H.column(0) == (1,) + (0,) * A.rows
        assert is_homogeneous_configuration(H)
        assert lattice_index(H) == lattice_index(A)


class TestFormats:
    @given(int_matrices(lo=-50, hi=50))
    def test_text_round_trip(self, M):
        assert parse_matrix_text(format_matrix_text(M)) == M
        assert parse_matrix(format_matrix_text(M)) == M

    @given(int_matrices(lo=-50, hi=50))
    def test_json_round_trip(self, M):
        assert matrix_from_dict(matrix_to_dict(M)) == M

    def test_comments_and_errors(self):
        assert parse_matrix_text("# A2\n2 4\n1 1 1 1\n0 1 3 4\n") == A2
        with pytest.raises(ValueError):
            parse_matrix_text("2 4\n1 1 1 1\n")
        with pytest.raises(ValueError):
            parse_matrix_text("2 2\n1 1\n0 x\n")

    def test_vectors(self):
        assert parse_int_vector("3, 2") == (3, 2)
        assert [str(x) for x in parse_rational_vector("1/2,3")] == ["1/2", "3"]
        with pytest.raises(ValueError):
            parse_int_vector("3,,2")
