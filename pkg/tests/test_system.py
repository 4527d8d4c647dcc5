from fractions import Fraction

import pytest
from hypothesis import given

from hgfam import (
    DimensionError,
    IntegerMatrix,
    assemble_system,
    box_operator,
    direct_sum,
    euler_operators,
    hat_family,
    hat_family_homogenized,
    ideals_equal,
    make_instance,
    predicted_stats,
    product_family,
    render_system,
    split_check,
    toric_generators,
)
from hgfam.families import A2, A3
from hgfam.system import parse_script_toric, parse_system_text

from conftest import configurations


def test_box_operator():
    assert str(box_operator((1, -1, -1, 1))) == "d1 d4 - d2 d3"
    assert str(box_operator((2, -3, 1, 0))) == "d1^2 d3 - d2^3"
    assert str(box_operator((1, 0, 0))) == "d1 - 1"
    with pytest.raises(ValueError, match="trivial relation"):
        box_operator((0, 0))


def test_euler_operators():
    E = euler_operators(A2, (1, 2))
    assert str(E[0]) == "x1 d1 + x2 d2 + x3 d3 + x4 d4 - 1"
    assert str(E[1]) == "x2 d2 + 3 x3 d3 + 4 x4 d4 - 2"
    assert all(e.shift == 0 for e in euler_operators(A2, (0, 0)))
    assert str(euler_operators(IntegerMatrix([[1, -2]]), (Fraction(-1, 2),))[0]) == "x1 d1 - 2 x2 d2 + 1/2"
    with pytest.raises(DimensionError):
        euler_operators(A2, (1,))


def test_assemble_example():
    S = assemble_system(A2, (1, 2))
    assert len(S.toric_part) == 4 and len(S.euler_part) == 2
    assert ideals_equal(S.toric_part, toric_generators(A2))


def test_assemble_one_variable():
    S = assemble_system(IntegerMatrix([[1]]), (0,))
    assert S.toric_part == ()
    assert [str(e) for e in S.euler_part] == ["x1 d1"]
    text = render_system(S)
    assert "toric:" not in text and "euler: x1 d1" in text


@given(configurations(max_rows=2, max_cols=4, lo=0, hi=3).filter(lambda A: all(any(c) for c in A.columns())))
def test_toric_part_in_kernel(A):
    S = assemble_system(A, (0,) * A.rows)
    for g in S.toric_part:
        assert A.apply(g.vector) == (0,) * A.rows


class TestSplit:
    def test_direct_sums(self):
        assert split_check(assemble_system(direct_sum(A2, A2), (1, 2, 1, 2)), (4, 4))
        S = assemble_system(direct_sum(A2, A3), (1, 2, 1, 0, 2))
        assert split_check(S, (4, 6))
        assert split_check(S, (10,))

    def test_hat5_coupled(self):
        inst = hat_family(5)
        S = assemble_system(inst.matrix, inst.parameter)
        assert not split_check(S, (5, 7, 1))
        assert not split_check(S, (12, 1))
        assert split_check(S, (13,))

    def test_wrong_blocks_detected(self):
        S = assemble_system(direct_sum(A2, A2), (1, 2, 1, 2))
        assert not split_check(S, (3, 5))

    def test_invalid_partition(self):
        S = assemble_system(A2, (1, 2))
        with pytest.raises(ValueError):
            split_check(S, (2, 1))
        with pytest.raises(ValueError):
            split_check(S, (4, 0))


class TestPredicted:
    def test_product_d5(self):
        st = predicted_stats(product_family(5))
        assert (st.volume, st.rank, st.jump, st.laurent_dim) == (20, 35, 15, 8)

    def test_hat_d2(self):
        st = predicted_stats(hat_family(2))
        assert (st.volume, st.rank, st.jump, st.laurent_dim) == (8, 9, 1, None)

    def test_plain(self):
        st = predicted_stats(make_instance("plain2"))
        assert (st.volume, st.rank, st.jump, st.laurent_dim) == (4, 5, 1, 2)
        st = predicted_stats(make_instance("plain3"))
        assert (st.volume, st.rank, st.jump) == (5, 7, 2)

    def test_homogenized_is_lower_bound(self):
        st = predicted_stats(hat_family_homogenized(3))
        assert st.rank_is_lower_bound and st.rank == 12 and "lower bound" in st.provenance

    @pytest.mark.parametrize("d", range(2, 13))
    def test_invariants(self, d):
        for inst in (product_family(d), hat_family(d)):
            st = predicted_stats(inst, compute_volume=False)
            assert st.violations() == []
            assert st.jump == st.rank - st.volume
            assert st.volume <= st.rank <= 2 ** (2 * d) * st.volume
            assert st.provenance

    def test_violations_flag_bad_values(self):
        from hgfam.system import PredictedStats
        bad = PredictedStats(10, 10, 9, 0, None, 40, "made up")
        v = bad.violations()
        assert any("rank < volume" in x for x in v) and any("jump" in x for x in v)


class TestRender:
    def test_text(self):
        text = render_system(assemble_system(A2, (1, 2)))
        for line in ("toric: d1 d4 - d2 d3", "toric: d2 d4^2 - d3^3",
                     "toric: d1 d3^2 - d2^2 d4", "toric: d1^2 d3 - d2^3",
                     "euler: x2 d2 + 3 x3 d3 + 4 x4 d4 - 2"):
            assert line in text.splitlines()

    @pytest.mark.parametrize("A, beta", [(A2, (1, 2)), (A3, (1, 0, 2)), (direct_sum(A2, A2), (1, 2, 1, 2))])
    def test_round_trips(self, A, beta):
        S = assemble_system(A, beta)
        from_text = parse_system_text(render_system(S, "text"))
        from_script = parse_script_toric(render_system(S, "script"))
        assert ideals_equal(from_text, S.toric_part)
        assert ideals_equal(from_script, S.toric_part)
        assert {g.vector for g in from_text} | {tuple(-x for x in g.vector) for g in from_text} >= {
            g.vector for g in S.toric_part}

    def test_script_shape(self):
        script = render_system(assemble_system(A2, (1, 2)), "script")
        assert "WeylAlgebra" in script and "holonomicRank" in script
        assert "d1*d4 - d2*d3" in script

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            render_system(assemble_system(A2, (1, 2)), "pdf")
