import json

import pytest

from quarticstrata.apolarity import gorenstein_table
from quarticstrata.errors import InconsistentRanks, WrongShape
from quarticstrata.groebner import Ideal, MonomialIdeal, hilbert
from quarticstrata.resolution import (BettiTable, betti_table, double_betti, minimal_betti_from_ranks,
                                      minimal_resolution, second_syzygy_rank)

rows = BettiTable.from_rows


def test_twisted_cubic(S):
    I = Ideal(S, [S.parse("x0*x2 - x1^2"), S.parse("x0*x3 - x1*x2"), S.parse("x1*x3 - x2^2")])
    B = betti_table(I)
    assert B == rows([[1], [0, 3, 2]])
    assert B.totals() == [1, 3, 2]


def test_j6_table(S, J6):
    B = betti_table(J6.to_ideal(S))
    assert B == rows([[1], [0, 4, 4, 1], [0, 2, 4, 2]])
    assert B.totals() == [1, 6, 8, 3]


def test_zero_ideal(S):
    assert betti_table(Ideal(S, [])) == rows([[1]])


def test_render_and_json_roundtrip():
    B = rows([[1], [0, 4, 2], [0, 0, 3, 2]])
    assert B.compact() == "1;-,4,2;-,-,3,2"
    assert BettiTable.from_json(json.loads(B.dumps())) == B
    text = B.render().splitlines()
    assert text[1].split() == ["total:", "1", "4", "5", "2"]
    assert text[3].split() == ["1:", ".", "4", "2", "."]


def test_alternating_sum_is_hilbert_numerator(S, J6):
    for I in [J6.to_ideal(S), Ideal(S, [S.parse("x0^2+x1*x3"), S.parse("x1^3-x2^2*x3")])]:
        B = betti_table(I)
        num = hilbert(I).numerator
        k = max(len(num), len(B.numerator()))
        pad = lambda v: list(v) + [0] * (k - len(v))
        assert pad(B.numerator()) == pad(num)


def test_ci_koszul(S):
    I = Ideal(S, [S.parse("x0^2 + x1*x2"), S.parse("x3^2 - x0*x1")])
    C = minimal_resolution(I)
    assert C.ranks() == [1, 2, 1]
    assert C.composes_to_zero() and C.is_graded()
    g1, g2 = (f for row in C.differential(1) for f in row)
    a, b = (f for row in C.differential(2) for f in row)
    assert (g1 * a + g2 * b).is_zero()
    assert {a.degree(), b.degree()} == {2}


def test_skew_lines(S):
    I = Ideal(S, [S.parse(t) for t in ["x0*x2", "x0*x3", "x1*x2", "x1*x3"]])
    C = minimal_resolution(I)
    assert C.ranks() == [1, 4, 4, 1]
    assert second_syzygy_rank(C) == 4


def test_conic_and_point(S):
    # conic {x3 = 0, x0 x1 = x2^2} together with the point (0:0:0:1) off its plane
    I = Ideal(S, [S.parse(t) for t in ["x0*x3", "x1*x3", "x2*x3", "x0*x1 - x2^2"]])
    C = minimal_resolution(I)
    assert C.betti() == rows([[1], [0, 4, 4, 1]])
    assert second_syzygy_rank(C) == 3


def test_double_line_on_smooth_quadric(S):
    I = Ideal(S, [S.parse(t) for t in ["x0^2", "x0*x1", "x1^2",
                                       "x0*(3*x2 + 5*x3) + x1*(7*x2 - 2*x3)"]])
    C = minimal_resolution(I)
    assert second_syzygy_rank(C) == 4


def test_second_syzygy_wrong_shape(S):
    with pytest.raises(WrongShape):
        second_syzygy_rank(minimal_resolution(Ideal(S, [S.var(0)])))


def test_koszul_vs_schreyer_fixed(S, J6):
    for I in [J6.to_ideal(S), Ideal(S, [S.parse("x0*x1 - x2*x3"), S.parse("x0^3 + x1^3")]),
              Ideal(S, [S.parse("x0^2"), S.parse("x0*x1 + x2^2"), S.parse("x1^3")])]:
        C = minimal_resolution(I)
        assert C.betti() == betti_table(I)
        assert C.composes_to_zero()


def test_minimal_betti_from_ranks(family_res):
    profile = family_res.complex().betti()
    full = {(3, 5): 1, (4, 6): 1}
    assert minimal_betti_from_ranks(profile, {(2, 3): 2, (3, 4): 2, **full}) == \
        rows([[1], [0, 4, 2], [0, 0, 3, 2]])
    assert minimal_betti_from_ranks(profile, {(2, 3): 1, (3, 4): 2, **full}) == \
        rows([[1], [0, 4, 3], [0, 1, 3, 2]])
    assert minimal_betti_from_ranks(profile, {(2, 3): 0, (3, 4): 1, **full}) == \
        rows([[1], [0, 4, 4, 1], [0, 2, 4, 2]])
    with pytest.raises(InconsistentRanks):
        minimal_betti_from_ranks(profile, {(2, 3): 5})


def test_double_ci():
    ci222 = rows([[1], [0, 3], [0, 0, 3], [0, 0, 0, 1]])
    D = double_betti(ci222, 3, 3, 4)
    assert D == rows([[1], [0, 4], [0, 0, 6], [0, 0, 0, 4], [0, 0, 0, 0, 1]])
    assert D.flags["below_threshold"]


def test_double_six_points_four_collinear():
    B = rows([[1], [0, 5, 6, 2], [], [0, 1, 2, 1]])
    D = double_betti(B, 3, 3, 6)
    assert not D.flags["below_threshold"]
    assert D == rows([[1], [0, 5, 6, 2], [], [0, 2, 4, 2], [], [0, 2, 6, 5], [0, 0, 0, 0, 1]])
    assert D.is_gorenstein_symmetric(4, 10)


def test_double_seven_points_three_collinear():
    B = rows([[1], [0, 3], [0, 1, 6, 3]])
    D = double_betti(B, 3, 3, 4)
    assert D == gorenstein_table((3, 0, 0))
    t = B.totals() + [0]
    assert D.totals() == [t[i] + t[4 - i] for i in range(5)]
