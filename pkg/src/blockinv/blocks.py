"""Exact invariants of principal ell-blocks of general linear and unitary
groups (ell in {2,3}) and of unipotent 3-blocks of special linear/unitary
groups.

The central computation is a weighted sum over ell-decompositions of the
weight w: each decomposition (w0, w1, ...) contributes a product of
multipartition counts k(c_i, w_i) whose level parameters c_i depend on the
block.  The number of irreducible characters k(B), the height-zero count
k0(B) and certified lower bounds for the Brauer character count l(B) all
reduce to this machinery.

Conventions: for unitary groups we work with q of the opposite sign
(GL_n(-q) = GU_n(q)), so the sign epsilon only enters through derive_params.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .partitions import (
    ell_adic_digits,
    ell_decomposition_count,
    multipartition_count,
    partition_count,
)


class Case2(str, Enum):
    """Residue of epsilon*q mod 4 (only meaningful for ell = 2)."""

    ONE_MOD4 = "1mod4"
    THREE_MOD4 = "3mod4"
    NA = "na"


@dataclass(frozen=True)
class BlockParams:
    """Parameters of a principal ell-block of GL_{wd}(epsilon*q).

    ell:    2 or 3
    case2:  residue of epsilon*q mod 4 (ell = 2 only, else NA)
    a:      ell^a is the exact power of ell dividing (epsilon*q)^d - 1
    atilde: 2^atilde is the exact power of 2 dividing q + epsilon (ell = 2)
    d:      order of epsilon*q mod 3 (d = 1 for ell = 2)
    w:      weight
    digits: base-ell digits of w, least significant first
    """

    ell: int
    case2: Case2
    a: int
    atilde: int | None
    d: int
    w: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if self.ell not in (2, 3):
            raise ValueError("ell must be 2 or 3")
        if self.w < 1:
            raise ValueError("weight w must be >= 1")
        if self.digits != ell_adic_digits(self.ell, self.w):
            raise ValueError("digits inconsistent with w")
        if self.ell == 3:
            if self.case2 is not Case2.NA:
                raise ValueError("case2 only applies to ell = 2")
            if self.d not in (1, 2):
                raise ValueError("d must be 1 or 2 for ell = 3")
            if self.a < 1:
                raise ValueError("a must be >= 1")
        else:
            if self.d != 1:
                raise ValueError("d = 1 for ell = 2")
            if self.case2 is Case2.ONE_MOD4:
                if self.a < 2 or self.atilde != 1:
                    raise ValueError("1mod4 case requires a >= 2 and atilde = 1")
            elif self.case2 is Case2.THREE_MOD4:
                if self.a != 1 or self.atilde is None or self.atilde < 2:
                    raise ValueError("3mod4 case requires a = 1 and atilde >= 2")
            else:
                raise ValueError("ell = 2 requires an explicit mod-4 case")

    @classmethod
    def gl3(cls, a: int, d: int, w: int) -> "BlockParams":
        return cls(3, Case2.NA, a, None, d, w, ell_adic_digits(3, w))

    @classmethod
    def gl2_1mod4(cls, a: int, w: int) -> "BlockParams":
        return cls(2, Case2.ONE_MOD4, a, 1, 1, w, ell_adic_digits(2, w))

    @classmethod
    def gl2_3mod4(cls, atilde: int, w: int) -> "BlockParams":
        return cls(2, Case2.THREE_MOD4, 1, atilde, 1, w, ell_adic_digits(2, w))


def _valuation(n: int, ell: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    n = abs(n)
    v = 0
    while n % ell == 0:
        v += 1
        n //= ell
    return v


def derive_params(epsilon: int, q: int, n: int, ell: int) -> BlockParams:
    """Block parameters of the principal ell-block of GL_n(epsilon*q).

    The weight is w = floor(n/d); q is not validated to be a prime power
    (caller's duty), but ell | q is rejected.  epsilon is +1 for linear,
    -1 for unitary groups.
    """
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    if q < 2:
        raise ValueError("q must be >= 2")
    if ell not in (2, 3):
        raise ValueError("ell must be 2 or 3")
    if q % ell == 0:
        raise ValueError(f"ell = {ell} must not divide q = {q}")
    eq = epsilon * q
    if ell == 3:
        d = 1 if eq % 3 == 1 else 2
        if n < d:
            raise ValueError(f"n = {n} smaller than d = {d}")
        a = _valuation(eq**d - 1, 3)
        return BlockParams.gl3(a, d, n // d)
    if n < 1:
        raise ValueError("n must be >= 1")
    if eq % 4 == 1:
        a = _valuation(eq - 1, 2)
        return BlockParams.gl2_1mod4(a, n)
    atilde = _valuation(eq + 1, 2)
    return BlockParams.gl2_3mod4(atilde, n)


@dataclass(frozen=True)
class LevelWeights:
    """Multipartition parameters per decomposition level: head[i] for the
    first levels, tail_repeat for all deeper ones.  All entries >= 1."""

    head: tuple[int, ...]
    tail_repeat: int

    def __post_init__(self):
        if any(c < 1 for c in self.head) or self.tail_repeat < 1:
            raise ValueError("level weights must be >= 1")

    def at(self, level: int) -> int:
        return self.head[level] if level < len(self.head) else self.tail_repeat


def level_weights(params: BlockParams) -> LevelWeights:
    """Level parameters of the character-count sum for the given block."""
    if params.ell == 3:
        b = params.d + (3**params.a - 1) // params.d
        b1 = 2 * 3 ** (params.a - 1) // params.d
        return LevelWeights((b,), b1)
    a, at = params.a, params.atilde
    w0 = 2**a
    w1 = 2 ** (a + at - 1) - 2 ** (a - 1)
    tail = 2 ** (a + at - 2)
    weights = LevelWeights((w0, w1), tail)
    # the two mod-4 cases degenerate; check against the generic expression
    if params.case2 is Case2.ONE_MOD4:
        assert weights.head == (2**a, 2 ** (a - 1)) and weights.tail_repeat == 2 ** (a - 1)
    else:
        assert weights.head == (2, 2**at - 1) and weights.tail_repeat == 2 ** (at - 1)
    return weights


def weighted_decomposition_sum(ell: int, weights: LevelWeights, w: int) -> int:
    """Sum over all ell-decompositions (w0, w1, ...) of w of the products
    k(c_0, w0) * k(c_1, w1) * ... with c_i = weights.at(i).

    Evaluated by the level recursion F(t, i) = sum over w_i = t mod ell of
    k(c_i, w_i) * F((t - w_i)/ell, i+1), with F(0, .) = 1 (so the empty
    decomposition of 0 contributes 1).  Memoization is invocation-local.
    """
    if w < 0:
        raise ValueError("w must be >= 0")
    memo: dict[tuple[int, int], int] = {}
    head_len = len(weights.head)

    def rec(t: int, level: int) -> int:
        if t == 0:
            return 1
        key = (t, min(level, head_len))
        hit = memo.get(key)
        if hit is not None:
            return hit
        c = weights.at(level)
        total = 0
        for w0 in range(t % ell, t + 1, ell):
            total += multipartition_count(c, w0) * rec((t - w0) // ell, level + 1)
        memo[key] = total
        return total

    return rec(w, 0)


def k_B_gl2(params: BlockParams) -> int:
    """Exact k(B) for the principal 2-block of GL_w(epsilon*q)."""
    if params.ell != 2:
        raise ValueError("k_B_gl2 requires ell = 2")
    return weighted_decomposition_sum(2, level_weights(params), params.w)


def k_B_gl3(a: int, d: int, w: int) -> int:
    """Exact k(B) = k(3,a,d,w) for the principal 3-block of GL_{wd}(q)
    (equal for the unitary twin, which shares (a,d,w))."""
    if a < 1:
        raise ValueError("a must be >= 1")
    if d not in (1, 2):
        raise ValueError("d must be 1 or 2")
    if w < 0:
        raise ValueError("w must be >= 0")
    b = d + (3**a - 1) // d
    b1 = 2 * 3 ** (a - 1) // d
    return weighted_decomposition_sum(3, LevelWeights((b,), b1), w)


def k_B(params: BlockParams) -> int:
    """Exact k(B) for either ell."""
    if params.ell == 2:
        return k_B_gl2(params)
    return k_B_gl3(params.a, params.d, params.w)


def k0_B_gl2(params: BlockParams) -> int:
    """Height-zero character count of the principal 2-block:
    2 ** sum(a_i * (a + i)) over the binary digits a_i of w.

    Each digit contributes the index |D_i : D_i'| = 2^(a+i) of the derived
    subgroup of the corresponding defect-group factor.
    """
    if params.ell != 2:
        raise ValueError("k0_B_gl2 requires ell = 2")
    return 2 ** sum(ai * (params.a + i) for i, ai in enumerate(params.digits))


def k0_B_gl3(a: int, d: int, w: int) -> int:
    """Height-zero character count of the principal 3-block:
    product over digits a_i of w of k(b * 3^i, a_i)."""
    if a < 1 or d not in (1, 2) or w < 1:
        raise ValueError("invalid (a, d, w)")
    b = d + (3**a - 1) // d
    result = 1
    for i, ai in enumerate(ell_adic_digits(3, w)):
        result *= multipartition_count(b * 3**i, ai) if ai else 1
    return result


def k0_B(params: BlockParams) -> int:
    if params.ell == 2:
        return k0_B_gl2(params)
    return k0_B_gl3(params.a, params.d, params.w)


def l_B_lower(params: BlockParams) -> int:
    """Certified lower bound for the Brauer character count l(B):
    the best of k(d,w) (ell = 3), pi(w) and p_ell(w)."""
    w = params.w
    candidates = [partition_count(w), ell_decomposition_count(params.ell, w)]
    if params.ell == 3:
        candidates.append(multipartition_count(params.d, w))
    return max(candidates)


# --- special linear / unitary groups, ell = 3 -------------------------------

@dataclass(frozen=True)
class SLParams:
    """Parameters of the unipotent 3-block of SL_w(epsilon*q) with 3 | q - epsilon.

    m:     3^m is the 3-part of the centre order, min{w_3, 3^a}
    delta: 1 iff w is a power of 3
    """

    a: int
    w: int
    m: int
    delta: int


def sl_params(a: int, w: int) -> SLParams:
    if a < 1 or w < 1:
        raise ValueError("sl_params requires a >= 1 and w >= 1")
    v3 = _valuation(w, 3) if w % 3 == 0 else 0
    m = min(v3, a)
    x = w
    while x % 3 == 0:
        x //= 3
    delta = 1 if x == 1 else 0
    return SLParams(a, w, m, delta)


def sl_upper_numerator(a: int, w: int) -> int:
    """Numerator of the character-count bound for the unipotent 3-block of
    SL_w: k(3,a,1,w) plus one correction term per admissible central level j,
    p_3(w/3^j) * 3^(2j + a*w/3^j).  The bound itself is this divided by 3^a."""
    if w % 3 != 0:
        raise ValueError("sl_upper_numerator requires 3 | w")
    if a < 1:
        raise ValueError("a must be >= 1")
    m = sl_params(a, w).m
    total = k_B_gl3(a, 1, w)
    for j in range(1, m + 1):
        total += ell_decomposition_count(3, w // 3**j) * 3 ** (2 * j + a * w // 3**j)
    return total


def k_B_sl_upper(a: int, w: int) -> int:
    """Upper bound for k(B) of the unipotent 3-block of SL_w (3 | w):
    ceil(sl_upper_numerator(a, w) / 3^a).

    The numerator mixes an exact term with bound terms, so the quotient need
    not be integral; rounding up keeps the value a valid upper bound.
    """
    num = sl_upper_numerator(a, w)
    den = 3**a
    return -(-num // den)


def k_B_sl_w3_exact(a: int) -> int:
    """Exact k(B) for the unipotent 3-block of SL_3 type blocks at w = 3:
    (k(3^a, 3) + 3^(a+2) - 3^(a-1)) / 3^a, with integrality asserted."""
    if a < 1:
        raise ValueError("a must be >= 1")
    num = multipartition_count(3**a, 3) + 3 ** (a + 2) - 3 ** (a - 1)
    den = 3**a
    if num % den:
        raise ArithmeticError(f"w=3 character count not divisible by 3^{a}")
    return num // den


def k_B_sl_coprime(a: int, w: int) -> int:
    """Exact k(B) when 3 does not divide w: k(B~)/3^a for the covering
    general linear block B~, with integrality asserted."""
    if w % 3 == 0:
        raise ValueError("k_B_sl_coprime requires 3 not dividing w")
    num = k_B_gl3(a, 1, w)
    den = 3**a
    if num % den:
        raise ArithmeticError("general linear character count not divisible by 3^a")
    return num // den


# Exact small-case values of k0(B) and l(B) for the special linear blocks,
# keyed by weight (valid for every admissible a).
SL_K0_EXACT = {3: 6, 9: 18}
SL_L_EXACT_LOWER = {3: 5, 6: 11}


def sl_k0_lower(a: int, w: int) -> tuple[int, bool]:
    """Lower bound for k0(B) of the SL block: max of k0(B~)/3^a and the
    recorded exact small cases.  Returns (value, is_exact)."""
    general = -(-k0_B_gl3(a, 1, w) // 3**a)
    exact = SL_K0_EXACT.get(w)
    if exact is not None and exact >= general:
        return exact, True
    return general, False


def sl_l_lower(a: int, w: int) -> int:
    """Lower bound for l(B) of the SL block."""
    return max(partition_count(w), SL_L_EXACT_LOWER.get(w, 0))
