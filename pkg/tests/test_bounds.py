"""Certified comparisons and the displayed lower-bound expressions."""

from fractions import Fraction

import pytest

from blockinv.blocks import BlockParams, sl_params
from blockinv.bounds import (
    BoundExpr,
    Verdict,
    compare,
    compare_ge,
    compare_le,
    expr,
    expr_floor,
    pow2,
    pow3,
)
from blockinv.groups import (
    Cyclic,
    class_count,
    defect_derived_class_count,
    defect_group_spec,
    wreath_tower,
)
from blockinv.ledger import (
    k_D_lower,
    k_D_prime_lower,
    sl_k_D_bar_lower,
    sl_k_D_bar_prime_lower,
)

F = Fraction


def test_compare_le_examples():
    assert compare_le(5, pow2(F(47, 20))) is Verdict.HOLDS
    assert compare_le(8, pow2(3)) is Verdict.HOLDS  # equality
    assert compare_le(9, pow2(3)) is Verdict.FAILS
    assert compare_le(2043, pow3(8)) is Verdict.HOLDS
    assert compare_le(2043, pow3(7)) is Verdict.HOLDS
    assert compare_le(2188, pow3(7)) is Verdict.FAILS
    assert compare_le(0, pow3(-5)) is Verdict.HOLDS


def test_compare_with_rational_base_and_coeff():
    # pi(n) style bound with base 7/5: (7/5)^10.2 is between 30 and 31
    assert compare_le(11, expr(F(7, 5), 6 + F("1.2"))) is Verdict.HOLDS
    assert compare_le(30, expr(F(7, 5), 9 + F("1.2"))) is Verdict.HOLDS
    assert compare_le(31, expr(F(7, 5), 9 + F("1.2"))) is Verdict.FAILS
    assert compare_ge(7, expr(2, 2, coeff=F(3, 2))) is Verdict.HOLDS  # 7 >= 6
    assert compare_ge(5, expr(2, 2, coeff=F(3, 2))) is Verdict.FAILS


def test_compare_negative_exponents():
    assert compare_le(1, pow2(F(-1, 2), coeff=2)) is Verdict.HOLDS  # 2^(1/2) > 1
    assert compare_le(2, pow2(F(-1, 2), coeff=2)) is Verdict.FAILS


def test_sqrt_term_comparisons():
    # 3^(5 + sqrt(3)) = 1629.27...
    e = pow3(5, sqrt_term=(F(1), 1))
    assert compare_le(1629, e) is Verdict.HOLDS
    assert compare_le(1630, e) is Verdict.FAILS
    assert compare_ge(1630, e) is Verdict.HOLDS
    assert compare(1629, e) == -1
    assert compare(1700, e) == 1
    # perfect-square fold: sqrt(3^2) = 3 exactly
    e = pow3(1, sqrt_term=(F(1), 2))
    assert compare_le(81, e) is Verdict.HOLDS
    assert compare_le(82, e) is Verdict.FAILS


def test_expr_floor():
    assert expr_floor(pow2(F(7, 2))) == 11
    assert expr_floor(pow3(0, coeff=F(5, 3))) == 1
    assert expr_floor(pow2(10)) == 1024
    assert expr_floor(expr(3, 2, coeff=F(1, 9))) == 1
    v = expr_floor(pow3(5, sqrt_term=(F(1), 1)))
    assert 1628 <= v <= 1629


def test_expr_validation_and_str():
    with pytest.raises(ValueError):
        BoundExpr(F(0), F(2), F(1))
    with pytest.raises(ValueError):
        BoundExpr(F(1), F(1), F(1))
    assert "3^(7/2)" in str(pow3(F(7, 2)))
    assert "sqrt" in str(pow3(1, sqrt_term=(F(2), 1)))


def test_k_D_lower_small_cases():
    # a = 1, ell = 3, w = 3: the tower bound gives exactly 3^3 = 27 for k(D),
    # which exceeds the true 17 (the documented height-1 exception); the
    # derived-subgroup bound gives exactly 9, attained
    params = BlockParams.gl3(1, 1, 3)
    assert expr_floor(k_D_prime_lower(params)) == 9
    value, exact = defect_derived_class_count(params)
    assert exact and value == 9


def test_k_D_lower_sound_where_exact_known():
    cases = [
        BlockParams.gl3(2, 1, 3),
        BlockParams.gl3(1, 1, 6),
        BlockParams.gl3(1, 1, 9),
        BlockParams.gl3(1, 1, 12),
        BlockParams.gl2_1mod4(2, 2),
        BlockParams.gl2_1mod4(3, 4),
        BlockParams.gl2_3mod4(2, 4),
        BlockParams.gl2_3mod4(3, 6),
        BlockParams.gl2_3mod4(4, 5),
    ]
    for params in cases:
        kd = class_count(defect_group_spec(params))
        assert expr_floor(k_D_lower(params)) <= kd
        dp_value, dp_exact = defect_derived_class_count(params)
        assert dp_exact
        assert expr_floor(k_D_prime_lower(params)) <= dp_value


def test_k_D_lower_labels():
    assert k_D_lower(BlockParams.gl3(1, 1, 3)).label == "kD31"
    assert k_D_lower(BlockParams.gl3(2, 1, 3)).label == "kD3"
    assert k_D_lower(BlockParams.gl2_1mod4(2, 2)).label == "kD_i4"
    assert k_D_lower(BlockParams.gl2_3mod4(3, 4)).label == "kD_tm4"
    assert k_D_prime_lower(BlockParams.gl3(1, 1, 9)).label == "kDprime31"


def test_k_D_lower_tower_bound_value():
    # w = 9, a = 1: digits (0,0,1); the derived tower bound is 3^(3+sqrt(3))
    e = k_D_prime_lower(BlockParams.gl3(1, 1, 9))
    assert e.sqrt_term == (F(1), 1)
    assert e.exponent == 3
    assert 180 <= expr_floor(e) <= 181
    # true value k(D_{2,3}') = 1017 dominates the display
    assert expr_floor(e) <= 1017


def test_sl_bar_bounds():
    slp = sl_params(2, 9)
    assert sl_k_D_bar_prime_lower(slp).exponent == 9  # 3^9, the quoted value
    assert expr_floor(sl_k_D_bar_lower(sl_params(1, 6))) == 3**3
    e = sl_k_D_bar_prime_lower(sl_params(1, 9))
    # 2w/3 + (1/2 - 2) - 1 - delta = 6 - 3/2 - 2 = 5/2
    assert e.exponent == F(5, 2)


def test_wreath_tower_bound_margins():
    # height 2: exact 1683 vs 3^(5 + sqrt(3)) = 1629.27...
    k2 = class_count(wreath_tower(Cyclic(3), 3, 2))
    assert k2 == 1683
    bound = pow3(5, sqrt_term=(F(1), 1))
    assert compare_ge(k2, bound) is Verdict.HOLDS
