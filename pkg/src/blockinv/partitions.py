"""Exact partition and multipartition combinatorics.

Everything here is integer-exact (Python bignums throughout): the partition
function pi(t), the number k(s,t) of s-multipartitions of t, enumeration of
s-splits, and base-ell digit decompositions for ell in {2,3}.  These are the
primitives from which all block invariants are assembled, so they come with
brute-force enumeration counterparts used as oracles in the test suite.
"""

from __future__ import annotations

import math
import threading
from functools import lru_cache
from typing import Iterator

# pi(t) is memoized up to this cap; larger arguments are rejected rather than
# silently recomputed without memoization.
PARTITION_CAP = 512

_lock = threading.Lock()
_pi_table = [1]
_series_cache: dict[int, list[int]] = {}


def set_partition_cap(cap: int) -> None:
    """Raise (or lower) the memoization cap for the partition function."""
    global PARTITION_CAP
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    PARTITION_CAP = cap


def partition_count(t: int) -> int:
    """Number of partitions of t, via the pentagonal-number recurrence.

    Exact for all 0 <= t <= PARTITION_CAP.
    """
    if t < 0:
        raise ValueError("partition_count requires t >= 0")
    if t > PARTITION_CAP:
        raise ValueError(f"partition_count capped at t <= {PARTITION_CAP}, got {t}")
    with _lock:
        while len(_pi_table) <= t:
            n = len(_pi_table)
            total = 0
            k = 1
            while True:
                g1 = n - k * (3 * k - 1) // 2
                if g1 < 0:
                    break
                term = _pi_table[g1]
                g2 = n - k * (3 * k + 1) // 2
                if g2 >= 0:
                    term += _pi_table[g2]
                total += term if k % 2 == 1 else -term
                k += 1
            _pi_table.append(total)
        return _pi_table[t]


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient; returns 0 for k > n."""
    if n < 0 or k < 0:
        raise ValueError("binomial requires nonnegative arguments")
    return math.comb(n, k)


def _mul_trunc(a: list[int], b: list[int], deg: int) -> list[int]:
    # schoolbook convolution truncated at x^deg
    out = [0] * (deg + 1)
    for i, ai in enumerate(a):
        if ai:
            jmax = min(len(b), deg + 1 - i)
            for j in range(jmax):
                out[i + j] += ai * b[j]
    return out


def _partition_series_power(s: int, deg: int) -> list[int]:
    """Coefficients 0..deg of the partition generating series raised to s."""
    base = [partition_count(i) for i in range(deg + 1)]
    result = [1] + [0] * deg
    e = s
    cur = base
    while e:
        if e & 1:
            result = _mul_trunc(result, cur, deg)
        e >>= 1
        if e:
            cur = _mul_trunc(cur, cur, deg)
    return result


def multipartition_count(s: int, t: int) -> int:
    """Number k(s,t) of s-tuples of partitions with sizes summing to t.

    Computed as coefficient t of the partition generating series raised to
    the s-th power (exponentiation by squaring on truncated series, so s may
    be in the thousands while t stays small).
    """
    if s < 1:
        raise ValueError("multipartition_count requires s >= 1")
    if t < 0:
        raise ValueError("multipartition_count requires t >= 0")
    with _lock:
        coeffs = _series_cache.get(s)
    if coeffs is None or len(coeffs) <= t:
        coeffs = _partition_series_power(s, t)
        with _lock:
            old = _series_cache.get(s)
            if old is None or len(old) < len(coeffs):
                _series_cache[s] = coeffs
            else:
                coeffs = old
    return coeffs[t]


def enumerate_splits(s: int, t: int) -> Iterator[tuple[int, ...]]:
    """Yield every ordered s-tuple of nonnegative integers summing to t.

    Lexicographic order; there are binomial(s+t-1, t) of them.
    """
    if s < 1:
        raise ValueError("enumerate_splits requires s >= 1")
    if t < 0:
        raise ValueError("enumerate_splits requires t >= 0")
    if s == 1:
        yield (t,)
        return
    for first in range(t + 1):
        for rest in enumerate_splits(s - 1, t - first):
            yield (first,) + rest


def enumerate_ell_decompositions(ell: int, t: int) -> Iterator[tuple[int, ...]]:
    """Yield every tuple (t0,...,tk) of nonnegative integers with
    sum(t_i * ell^i) == t and t_k != 0, in lexicographic order.

    The decomposition of 0 is the empty tuple.
    """
    _check_ell(ell)
    if t < 0:
        raise ValueError("decompositions require t >= 0")
    if t == 0:
        yield ()
        return
    for t0 in range(t % ell, t + 1, ell):
        for rest in enumerate_ell_decompositions(ell, (t - t0) // ell):
            yield (t0,) + rest


@lru_cache(maxsize=None)
def ell_decomposition_count(ell: int, t: int) -> int:
    """Cardinality p_ell(t) of the set of ell-decompositions of t."""
    _check_ell(ell)
    if t < 0:
        raise ValueError("decompositions require t >= 0")
    if t == 0:
        return 1
    return sum(
        ell_decomposition_count(ell, (t - t0) // ell)
        for t0 in range(t % ell, t + 1, ell)
    )


def ell_adic_digits(ell: int, w: int) -> tuple[int, ...]:
    """Base-ell digits of w >= 1, least significant first."""
    _check_ell(ell)
    if w < 1:
        raise ValueError("ell_adic_digits requires w >= 1")
    digits = []
    while w:
        digits.append(w % ell)
        w //= ell
    return tuple(digits)


def _check_ell(ell: int) -> None:
    if ell not in (2, 3):
        raise ValueError(f"ell must be 2 or 3, got {ell}")
