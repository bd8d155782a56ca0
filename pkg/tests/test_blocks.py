"""Block-invariant formulas against their recorded values and oracles."""

import pytest

from blockinv.blocks import (
    BlockParams,
    Case2,
    LevelWeights,
    derive_params,
    k0_B_gl2,
    k0_B_gl3,
    k_B_gl2,
    k_B_gl3,
    k_B_sl_coprime,
    k_B_sl_upper,
    k_B_sl_w3_exact,
    l_B_lower,
    level_weights,
    sl_k0_lower,
    sl_l_lower,
    sl_params,
    sl_upper_numerator,
    weighted_decomposition_sum,
)
from blockinv.partitions import (
    enumerate_ell_decompositions,
    multipartition_count,
    partition_count,
)


def brute_weighted_sum(ell, weights, w):
    total = 0
    for dec in enumerate_ell_decompositions(ell, w):
        term = 1
        for i, wi in enumerate(dec):
            term *= multipartition_count(weights.at(i), wi)
        total += term
    return total


def test_derive_params_examples():
    p = derive_params(+1, 4, 3, 3)
    assert (p.d, p.a, p.w) == (1, 1, 3)
    p = derive_params(+1, 8, 2, 3)
    assert (p.d, p.a, p.w) == (2, 2, 1)
    p = derive_params(+1, 7, 2, 2)
    assert p.case2 is Case2.THREE_MOD4
    assert (p.a, p.atilde, p.w) == (1, 3, 2)


def test_derive_params_unitary_sign():
    # GL_n(-q) conventions: the sign enters via eq = epsilon * q
    p = derive_params(-1, 5, 2, 3)
    assert (p.d, p.a) == (1, 1)  # -5 = 1 mod 3, 3 || -6
    p = derive_params(-1, 7, 4, 2)
    assert p.case2 is Case2.ONE_MOD4 and p.a == 3  # -7 = 1 mod 4, 8 || -8


def test_derive_params_rejects_bad_input():
    with pytest.raises(ValueError):
        derive_params(+1, 9, 2, 3)  # ell | q
    with pytest.raises(ValueError):
        derive_params(+1, 8, 1, 3)  # n < d
    with pytest.raises(ValueError):
        derive_params(+2, 8, 2, 3)


def test_level_weights_cases():
    w14 = level_weights(BlockParams.gl2_1mod4(3, 2))
    assert w14.head == (8, 4) and w14.tail_repeat == 4
    w34 = level_weights(BlockParams.gl2_3mod4(3, 2))
    assert w34.head == (2, 7) and w34.tail_repeat == 4
    w3 = level_weights(BlockParams.gl3(1, 1, 3))
    assert w3.head == (3,) and w3.tail_repeat == 2
    w3d2 = level_weights(BlockParams.gl3(2, 2, 3))
    assert w3d2.head == (6,) and w3d2.tail_repeat == 3


def test_weighted_sum_known_values():
    assert weighted_decomposition_sum(3, LevelWeights((3,), 2), 3) == 24
    assert weighted_decomposition_sum(3, LevelWeights((5,), 4), 0) == 1
    assert weighted_decomposition_sum(2, LevelWeights((2, 7), 4), 8) == 2908


def test_weighted_sum_matches_enumeration_oracle():
    profiles = [
        (3, LevelWeights((3,), 2)),
        (3, LevelWeights((3,), 3)),
        (3, LevelWeights((9, 5), 2)),
        (2, LevelWeights((2, 7), 4)),
        (2, LevelWeights((4,), 2)),
        (2, LevelWeights((6, 1, 5), 3)),
    ]
    for ell, weights in profiles:
        for w in range(16):
            assert weighted_decomposition_sum(ell, weights, w) == brute_weighted_sum(
                ell, weights, w
            )


def test_weighted_sum_oracle_on_case_profiles():
    # the actual level profiles of every block case, up to weight 30
    profiles = [(2, level_weights(BlockParams.gl2_1mod4(a, 1))) for a in (2, 3)]
    profiles += [(2, level_weights(BlockParams.gl2_3mod4(at, 1))) for at in (2, 3)]
    profiles += [
        (3, level_weights(BlockParams.gl3(a, d, 1))) for a in (1, 2) for d in (1, 2)
    ]
    for ell, weights in profiles:
        for w in range(31):
            assert weighted_decomposition_sum(ell, weights, w) == brute_weighted_sum(
                ell, weights, w
            )


def test_k_B_gl3_golden_values():
    assert k_B_gl3(1, 1, 3) == 24
    assert k_B_gl3(1, 1, 6) == 270
    assert k_B_gl3(1, 1, 9) == 2043


def test_k_B_gl3_weight_one_is_b():
    for a in range(1, 5):
        for d in (1, 2):
            assert k_B_gl3(a, d, 1) == d + (3**a - 1) // d


def test_k_B_gl3_brute_cross_check():
    for a in (1, 2):
        for d in (1, 2):
            b = d + (3**a - 1) // d
            b1 = 2 * 3 ** (a - 1) // d
            weights = LevelWeights((b,), b1)
            for w in range(12):
                assert k_B_gl3(a, d, w) == brute_weighted_sum(3, weights, w)
    assert k_B_gl3(2, 2, 3) == 101


def test_k_B_gl2_golden_values():
    assert k_B_gl2(BlockParams.gl2_1mod4(3, 2)) == 48
    assert k_B_gl2(BlockParams.gl2_1mod4(2, 1)) == 4
    table_at3 = {1: 2, 2: 12, 4: 94, 8: 2908}
    for w, expected in table_at3.items():
        assert k_B_gl2(BlockParams.gl2_3mod4(3, w)) == expected
    table_at2 = {1: 2, 2: 8, 3: 16}
    for w, expected in table_at2.items():
        assert k_B_gl2(BlockParams.gl2_3mod4(2, w)) == expected


def test_k_B_gl2_closed_small_weights():
    # w = 1 gives 2^a in the 1mod4 case and 2 in the 3mod4 case;
    # w = 2 in the 3mod4 case gives 2^atilde + 4
    for a in range(2, 7):
        assert k_B_gl2(BlockParams.gl2_1mod4(a, 1)) == 2**a
    for at in range(2, 7):
        assert k_B_gl2(BlockParams.gl2_3mod4(at, 1)) == 2
        assert k_B_gl2(BlockParams.gl2_3mod4(at, 2)) == 2**at + 4


def test_k_B_gl2_odd_weight_doubling():
    # passing from even w to w+1 at most doubles the character count
    for at in (2, 3, 4):
        for j in range(0, 16):
            even = k_B_gl2(BlockParams.gl2_3mod4(at, 2 * j)) if j else 1
            odd = k_B_gl2(BlockParams.gl2_3mod4(at, 2 * j + 1))
            assert odd <= 2 * even


def test_k0_values():
    assert k0_B_gl3(1, 1, 3) == 9
    assert k0_B_gl3(1, 1, 6) == 54
    assert k0_B_gl3(1, 1, 9) == 27
    assert k0_B_gl2(BlockParams.gl2_3mod4(2, 2)) == 4
    assert k0_B_gl2(BlockParams.gl2_3mod4(2, 1)) == 2
    assert k0_B_gl2(BlockParams.gl2_3mod4(4, 11)) == 128
    # general a: each digit contributes 2^(a+i)
    assert k0_B_gl2(BlockParams.gl2_1mod4(3, 2)) == 16
    assert k0_B_gl2(BlockParams.gl2_1mod4(2, 1)) == 4


def test_k0_never_exceeds_k():
    for a in (1, 2):
        for d in (1, 2):
            for w in range(1, 15):
                assert k0_B_gl3(a, d, w) <= k_B_gl3(a, d, w)
    for at in (2, 3):
        for w in range(1, 15):
            params = BlockParams.gl2_3mod4(at, w)
            assert k0_B_gl2(params) <= k_B_gl2(params)


def test_l_B_lower():
    assert l_B_lower(BlockParams.gl3(1, 1, 6)) == 11
    assert l_B_lower(BlockParams.gl2_1mod4(2, 4)) == 5
    assert l_B_lower(BlockParams.gl3(1, 1, 1)) == 1
    # d = 2 uses pair counts, which dominate plain partitions
    assert l_B_lower(BlockParams.gl3(1, 2, 4)) == multipartition_count(2, 4)


def test_sl_params():
    assert (sl_params(1, 9).m, sl_params(1, 9).delta) == (1, 1)
    assert (sl_params(2, 6).m, sl_params(2, 6).delta) == (1, 0)
    assert (sl_params(3, 27).m, sl_params(3, 27).delta) == (3, 1)
    assert (sl_params(2, 10).m, sl_params(2, 10).delta) == (0, 0)


def test_k_B_sl_upper_values():
    assert k_B_sl_upper(1, 6) == 117
    assert sl_upper_numerator(1, 6) == 351
    assert k_B_sl_upper(2, 9) == 45687
    assert sl_upper_numerator(2, 9) % 9 == 0
    # the formula evaluates to 843 at (a, w) = (1, 9); the reference value
    # 745 quoted for this point is inconsistent with the formula that the
    # (1, 6) and (2, 9) anchors pin down exactly
    assert k_B_sl_upper(1, 9) == 843
    with pytest.raises(ValueError):
        k_B_sl_upper(1, 7)


def test_k_B_sl_upper_brute_recomputation():
    # independent recomputation straight from the definition
    from blockinv.partitions import ell_decomposition_count

    for a, w in [(1, 6), (1, 9), (2, 6), (2, 9), (3, 9), (1, 12)]:
        m = sl_params(a, w).m
        num = k_B_gl3(a, 1, w) + sum(
            ell_decomposition_count(3, w // 3**j) * 3 ** (2 * j + a * w // 3**j)
            for j in range(1, m + 1)
        )
        assert sl_upper_numerator(a, w) == num
        assert k_B_sl_upper(a, w) == -(-num // 3**a)


def test_k_B_sl_w3_exact():
    assert k_B_sl_w3_exact(1) == 16
    # closed form: k(3^a,3) = 3^(3a)/6 + 3^(2a+1)/2 + 3^a * 4/3
    for a in range(1, 9):
        s = 3**a
        num = (s**3 + 9 * s**2 + 8 * s) // 6 + 3 ** (a + 2) - 3 ** (a - 1)
        assert num % 3**a == 0
        assert k_B_sl_w3_exact(a) == num // 3**a
    assert k_B_sl_w3_exact(2) == 37
    assert k_B_sl_w3_exact(3) == 172
    for a in range(2, 9):
        assert k_B_sl_w3_exact(a) <= 5 * 3 ** (2 * a - 2)


def test_k_B_sl_coprime():
    assert k_B_sl_coprime(1, 1) == 1
    assert k_B_sl_coprime(1, 2) == 3
    with pytest.raises(ValueError):
        k_B_sl_coprime(1, 6)


def test_sl_small_case_overrides():
    assert sl_k0_lower(1, 3) == (6, True)
    assert sl_k0_lower(1, 9) == (18, True)
    assert sl_k0_lower(1, 6) == (18, False)
    assert sl_l_lower(1, 3) == 5
    assert sl_l_lower(1, 6) == 11
    assert sl_l_lower(1, 12) == partition_count(12)


def test_block_params_validation():
    with pytest.raises(ValueError):
        BlockParams.gl3(0, 1, 3)
    with pytest.raises(ValueError):
        BlockParams.gl3(1, 3, 3)
    with pytest.raises(ValueError):
        BlockParams.gl2_3mod4(1, 3)  # atilde must be >= 2
    with pytest.raises(ValueError):
        BlockParams.gl2_1mod4(1, 3)  # a must be >= 2
    with pytest.raises(ValueError):
        BlockParams(3, Case2.NA, 1, None, 1, 3, (1, 1))  # bad digits
