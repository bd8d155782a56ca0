"""Certified comparison of exact integers against bound expressions
coeff * base^exponent.

Exponents are exact rationals, so every comparison without a square-root
term is decided exactly by cross-multiplied integer powers: for exponent
p/q, n <= c*b^(p/q) iff (n/c)^q <= b^p.  An optional additive exponent term
r*sqrt(base^s) (needed for one family of wreath-tower bounds at even tower
height) is handled by refining rational enclosures of the square root until
the comparison is strict; if the enclosure budget runs out the verdict is
Undecided, which is a value, not an error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import isqrt


class Verdict(str, Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNDECIDED = "Undecided"


# denominators of square-root enclosures tried before giving up
_SQRT_DENOMS = (4, 16, 64, 256, 1024, 4096)


@dataclass(frozen=True)
class BoundExpr:
    """coeff * base^(exponent + r*sqrt(base^s)) with exact rational parts.

    coeff > 0 and base > 1; sqrt_term is an optional pair (r, s) with s a
    nonnegative integer.
    """

    coeff: Fraction
    base: Fraction
    exponent: Fraction
    sqrt_term: tuple[Fraction, int] | None = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.coeff <= 0:
            raise ValueError("coeff must be positive")
        if self.base <= 1:
            raise ValueError("base must exceed 1")
        if self.sqrt_term is not None and self.sqrt_term[1] < 0:
            raise ValueError("sqrt power must be nonnegative")

    def __str__(self) -> str:
        parts = []
        if self.coeff != 1:
            parts.append(str(self.coeff))
        exp = str(self.exponent)
        if self.sqrt_term is not None:
            r, s = self.sqrt_term
            exp += f" + {r}*sqrt({self.base}^{s})"
        if self.exponent or self.sqrt_term:
            parts.append(f"{self.base}^({exp})")
        return " * ".join(parts) if parts else "1"


def expr(base, exponent, coeff=1, sqrt_term=None, label="") -> BoundExpr:
    st = None
    if sqrt_term is not None:
        st = (Fraction(sqrt_term[0]), int(sqrt_term[1]))
    return BoundExpr(Fraction(coeff), Fraction(base), Fraction(exponent), st, label)


def pow2(exponent, coeff=1, label="") -> BoundExpr:
    return expr(2, exponent, coeff, label=label)


def pow3(exponent, coeff=1, sqrt_term=None, label="") -> BoundExpr:
    return expr(3, exponent, coeff, sqrt_term, label=label)


def _cmp_pow(n: int, coeff: Fraction, base: Fraction, exponent: Fraction) -> int:
    """Sign of n - coeff*base^exponent, computed exactly."""
    if n < 0:
        return -1
    if n == 0:
        return -1  # the bound value is strictly positive
    lhs = Fraction(n) / coeff
    q = exponent.denominator
    p = exponent.numerator
    left = lhs**q
    right = base**p
    if left < right:
        return -1
    if left > right:
        return 1
    return 0


def _sqrt_enclosure(value: Fraction, denom: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= sqrt(value) <= hi with denominators ~denom."""
    num, den = value.numerator, value.denominator
    m = isqrt(num * den * denom * denom)
    lo = Fraction(m, den * denom)
    hi = Fraction(m + 1, den * denom)
    return lo, hi


def compare(n: int, e: BoundExpr) -> int | None:
    """Sign of n - value(e); None when undecided (sqrt enclosure exhausted)."""
    if e.sqrt_term is None:
        return _cmp_pow(n, e.coeff, e.base, e.exponent)
    r, s = e.sqrt_term
    if r == 0:
        return _cmp_pow(n, e.coeff, e.base, e.exponent)
    v = e.base**s
    # exact fold when base^s is a perfect rational square
    rn, rd = isqrt(v.numerator), isqrt(v.denominator)
    if rn * rn == v.numerator and rd * rd == v.denominator:
        return _cmp_pow(n, e.coeff, e.base, e.exponent + r * Fraction(rn, rd))
    for denom in _SQRT_DENOMS:
        lo, hi = _sqrt_enclosure(v, denom)
        e_lo, e_hi = (e.exponent + r * lo, e.exponent + r * hi)
        if r < 0:
            e_lo, e_hi = e_hi, e_lo
        # base > 1, so the value lies strictly between the two endpoints
        if _cmp_pow(n, e.coeff, e.base, e_lo) <= 0:
            return -1
        if _cmp_pow(n, e.coeff, e.base, e_hi) >= 0:
            return 1
    return None


def compare_le(n: int, e: BoundExpr) -> Verdict:
    """Decide n <= e."""
    c = compare(n, e)
    if c is None:
        return Verdict.UNDECIDED
    return Verdict.HOLDS if c <= 0 else Verdict.FAILS


def compare_ge(n: int, e: BoundExpr) -> Verdict:
    """Decide n >= e."""
    c = compare(n, e)
    if c is None:
        return Verdict.UNDECIDED
    return Verdict.HOLDS if c >= 0 else Verdict.FAILS


def _int_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1."""
    if n < 0 or k < 1:
        raise ValueError("bad root arguments")
    if n == 0:
        return 0
    if k == 1:
        return n
    x = 1 << (-(-n.bit_length() // k) + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    return x


def expr_floor(e: BoundExpr) -> int:
    """Largest integer certified <= value(e).

    Exact without a sqrt term; with one, the floor of the best lower
    enclosure is returned (still a valid integer lower bound).
    """
    exponent = e.exponent
    if e.sqrt_term is not None:
        r, s = e.sqrt_term
        v = e.base**s
        rn, rd = isqrt(v.numerator), isqrt(v.denominator)
        if rn * rn == v.numerator and rd * rd == v.denominator:
            exponent = exponent + r * Fraction(rn, rd)
        else:
            lo, hi = _sqrt_enclosure(v, _SQRT_DENOMS[-1])
            exponent = exponent + r * (lo if r > 0 else hi)
    q = exponent.denominator
    p = exponent.numerator
    t = e.coeff**q * e.base**p  # value^q
    m = _int_root(t.numerator // t.denominator, q)
    while Fraction((m + 1) ** q) <= t:
        m += 1
    while m > 0 and Fraction(m**q) > t:
        m -= 1
    return m
