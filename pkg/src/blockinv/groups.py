"""Symbolic defect groups and exact class counting.

Defect groups of the blocks handled here are built from four constructors:
cyclic groups, semidihedral 2-groups, wreath products by a cyclic group of
prime order, and direct products with multiplicities.  Class counts, orders
and derived-subgroup orders all have exact structural recursions over this
tree; the brute-force permutation engine (permgroup) provides the
independent oracle and the exact class counts of derived subgroups, which
have no closed form.

A small grammar (`c(n)`, `sd(n)`, `wr(spec,p)`, `prod(t^m, ...)`) names
specs on the command line.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Union

import numpy as np

from ._backend import default_cap
from .permgroup import PermGroup


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class SemiDihedral:
    # order 2^(atilde+2) with atilde >= 2, i.e. at least 16
    order: int


@dataclass(frozen=True)
class Wreath:
    base: "GroupSpec"
    p: int


@dataclass(frozen=True)
class Product:
    factors: tuple[tuple["GroupSpec", int], ...]


GroupSpec = Union[Cyclic, SemiDihedral, Wreath, Product]


class GroupSpecError(ValueError):
    """Semantic error in a group spec (bad orders, bad primes)."""


def validate_spec(spec: GroupSpec) -> None:
    if isinstance(spec, Cyclic):
        if spec.n < 1:
            raise GroupSpecError("cyclic group order must be >= 1")
    elif isinstance(spec, SemiDihedral):
        if spec.order < 16 or spec.order & (spec.order - 1):
            raise GroupSpecError(
                f"semidihedral order must be 2^(atilde+2) with atilde >= 2, got {spec.order}"
            )
    elif isinstance(spec, Wreath):
        if spec.p not in (2, 3):
            raise GroupSpecError("wreath top group must be cyclic of order 2 or 3")
        validate_spec(spec.base)
    elif isinstance(spec, Product):
        if not spec.factors:
            raise GroupSpecError("empty product")
        for sub, mult in spec.factors:
            if mult < 1:
                raise GroupSpecError("product multiplicities must be >= 1")
            validate_spec(sub)
    else:
        raise GroupSpecError(f"not a group spec: {spec!r}")


def sd_atilde(spec: SemiDihedral) -> int:
    return spec.order.bit_length() - 3


def group_order(spec: GroupSpec) -> int:
    if isinstance(spec, Cyclic):
        return spec.n
    if isinstance(spec, SemiDihedral):
        return spec.order
    if isinstance(spec, Wreath):
        return group_order(spec.base) ** spec.p * spec.p
    return _prod(group_order(sub) ** m for sub, m in spec.factors)


def class_count(spec: GroupSpec) -> int:
    """Exact number of conjugacy classes.

    Wreath products G wr C_p (p prime) satisfy
    k = (k(G)^p - k(G))/p + p*k(G): class tuples of the base fuse along
    p-cycles of coordinates, and each of the p-1 nontrivial base cosets
    contributes one class per class of G via the cycle product.
    """
    if isinstance(spec, Cyclic):
        return spec.n
    if isinstance(spec, SemiDihedral):
        return spec.order // 4 + 3
    if isinstance(spec, Wreath):
        k = class_count(spec.base)
        p = spec.p
        return (k**p - k) // p + p * k
    return _prod(class_count(sub) ** m for sub, m in spec.factors)


def abelianization_order(spec: GroupSpec) -> int:
    """Order of G/G'."""
    if isinstance(spec, Cyclic):
        return spec.n
    if isinstance(spec, SemiDihedral):
        return 4
    if isinstance(spec, Wreath):
        return abelianization_order(spec.base) * spec.p
    return _prod(abelianization_order(sub) ** m for sub, m in spec.factors)


def derived_order(spec: GroupSpec) -> int:
    return group_order(spec) // abelianization_order(spec)


def _prod(it) -> int:
    out = 1
    for v in it:
        out *= v
    return out


def spec_str(spec: GroupSpec) -> str:
    """Canonical grammar string (parses back to an equal spec)."""
    if isinstance(spec, Cyclic):
        return f"c({spec.n})"
    if isinstance(spec, SemiDihedral):
        return f"sd({spec.order})"
    if isinstance(spec, Wreath):
        return f"wr({spec_str(spec.base)},{spec.p})"
    parts = []
    for sub, m in spec.factors:
        parts.append(spec_str(sub) if m == 1 else f"{spec_str(sub)}^{m}")
    return "prod(" + ",".join(parts) + ")"


# --- grammar ----------------------------------------------------------------
# spec  := term
# term  := "c(" int ")" | "sd(" int ")" | "wr(" term "," prime ")"
#        | "prod(" term ("^" int)? ("," term ("^" int)?)* ")"
# Whitespace is insignificant.

class GroupSpecSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise GroupSpecSyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, token: str):
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            self.error(f"expected {token!r}")
        self.pos += len(token)

    def peek_word(self) -> str:
        self.skip_ws()
        end = self.pos
        while end < len(self.text) and self.text[end].isalpha():
            end += 1
        return self.text[self.pos:end]

    def parse_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def parse_term(self) -> GroupSpec:
        word = self.peek_word()
        if word == "c":
            self.expect("c")
            self.expect("(")
            n = self.parse_int()
            self.expect(")")
            return Cyclic(n)
        if word == "sd":
            self.expect("sd")
            self.expect("(")
            n = self.parse_int()
            self.expect(")")
            return SemiDihedral(n)
        if word == "wr":
            self.expect("wr")
            self.expect("(")
            base = self.parse_term()
            self.expect(",")
            p = self.parse_int()
            self.expect(")")
            return Wreath(base, p)
        if word == "prod":
            self.expect("prod")
            self.expect("(")
            factors = [self.parse_factor()]
            while True:
                self.skip_ws()
                if self.pos < len(self.text) and self.text[self.pos] == ",":
                    self.pos += 1
                    factors.append(self.parse_factor())
                else:
                    break
            self.expect(")")
            return Product(tuple(factors))
        self.error("expected one of c(, sd(, wr(, prod(")

    def parse_factor(self) -> tuple[GroupSpec, int]:
        term = self.parse_term()
        self.skip_ws()
        mult = 1
        if self.pos < len(self.text) and self.text[self.pos] == "^":
            self.pos += 1
            mult = self.parse_int()
        return term, mult


def parse_group_spec(text: str) -> GroupSpec:
    """Parse the grammar above; syntax errors carry the byte offset and
    semantic errors (e.g. a non-semidihedral sd order) raise GroupSpecError."""
    parser = _Parser(text)
    spec = parser.parse_term()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error("trailing input")
    validate_spec(spec)
    return spec


# --- faithful permutation representations ------------------------------------

def generator_rows(spec: GroupSpec) -> tuple[int, list[np.ndarray]]:
    """Degree and generator rows of a faithful permutation representation.

    Cyclic n acts on n points; the semidihedral group of order 2^(a+2) acts
    on 2^(a+1) points through x: p -> (2^a - 1) p and y: p -> p + 1 (mod the
    point count), which satisfy x^2 = y^(2^(a+1)) = 1 and x y x = y^(2^a -1);
    wreath products act imprimitively on p disjoint copies; products act on
    disjoint unions.
    """
    validate_spec(spec)
    if isinstance(spec, Cyclic):
        n = spec.n
        return n, [np.array([(p + 1) % n for p in range(n)], dtype=np.int64)]
    if isinstance(spec, SemiDihedral):
        m = spec.order // 2
        s = m // 2 - 1
        y = np.array([(p + 1) % m for p in range(m)], dtype=np.int64)
        x = np.array([(s * p) % m for p in range(m)], dtype=np.int64)
        return m, [x, y]
    if isinstance(spec, Wreath):
        d, base_gens = generator_rows(spec.base)
        p = spec.p
        deg = p * d
        rows = []
        for g in base_gens:
            row = np.arange(deg, dtype=np.int64)
            row[:d] = g
            rows.append(row)
        cycle = np.arange(deg, dtype=np.int64)
        for blk in range(p):
            for t in range(d):
                cycle[blk * d + t] = ((blk + 1) % p) * d + t
        rows.append(cycle)
        return deg, rows
    offset = 0
    rows = []
    pieces = []
    for sub, mult in spec.factors:
        d, sub_gens = generator_rows(sub)
        for _ in range(mult):
            pieces.append((offset, d, sub_gens))
            offset += d
    deg = offset
    for off, d, sub_gens in pieces:
        for g in sub_gens:
            row = np.arange(deg, dtype=np.int64)
            row[off:off + d] = g + off
            rows.append(row)
    return deg, rows


def realize(spec: GroupSpec, order_cap: int | None = None) -> PermGroup:
    """Faithful PermGroup for the spec; rejects groups above order_cap."""
    cap = default_cap() if order_cap is None else order_cap
    order = group_order(spec)
    if order > cap:
        raise ValueError(f"group order {order} exceeds cap {cap}")
    deg, rows = generator_rows(spec)
    return PermGroup(rows, degree=deg, cap=cap)


# --- derived-subgroup class counts -------------------------------------------
# No closed form exists; exact values come from brute force on the derived
# subgroup (enumerated directly from commutators of the parent generators,
# so the parent itself is never enumerated).  When even the derived subgroup
# is too large, a certified lower bound is used instead: the derived subgroup
# of G wr C_p sits inside the base G^p with index |G/G'|, so its class count
# is at least class_count(G)^p / abelianization_order(G).

_derived_cache: dict[tuple[str, int], tuple[int, bool]] = {}
_cache_lock = threading.Lock()


def derived_class_count(spec: GroupSpec, cap: int | None = None) -> tuple[int, bool]:
    """(value, exact) with value <= k(G') and exact=True when value = k(G')."""
    validate_spec(spec)
    cap = default_cap() if cap is None else cap
    key = (spec_str(spec), cap)
    with _cache_lock:
        hit = _derived_cache.get(key)
    if hit is not None:
        return hit
    result = _derived_class_count(spec, cap)
    with _cache_lock:
        _derived_cache[key] = result
    return result


def _derived_class_count(spec: GroupSpec, cap: int) -> tuple[int, bool]:
    if isinstance(spec, Cyclic):
        return 1, True
    if isinstance(spec, SemiDihedral):
        # derived subgroup is the cyclic group generated by y^2
        return spec.order // 4, True
    if isinstance(spec, Product):
        value, exact = 1, True
        for sub, mult in spec.factors:
            v, e = _derived_class_count(sub, cap)
            value *= v**mult
            exact = exact and e
        return value, exact
    if derived_order(spec) <= cap:
        deg, rows = generator_rows(spec)
        parent = PermGroup(rows, degree=deg, cap=cap)
        return parent.derived_subgroup().class_count(), True
    # index bound through the base of the wreath product
    base_k = class_count(spec.base)
    index = abelianization_order(spec.base)
    value = -(-(base_k**spec.p) // index)
    return value, False


def brute_class_count_of_spec(spec: GroupSpec, cap: int | None = None) -> int:
    """Exact class count by full enumeration (the oracle side)."""
    return realize(spec, order_cap=cap).class_count()


# --- defect groups ------------------------------------------------------------

def wreath_tower(base: GroupSpec, p: int, levels: int) -> GroupSpec:
    """base wr C_p wr ... wr C_p with `levels` cyclic factors on top."""
    spec = base
    for _ in range(levels):
        spec = Wreath(spec, p)
    return spec


def defect_factor(params, i: int) -> GroupSpec:
    """Defect-group factor attached to digit i of the weight.

    For ell = 3 and for 2-blocks with epsilon*q = 1 mod 4 this is the
    iterated wreath product C_{ell^a} wr C_ell wr ... wr C_ell (i cyclic
    factors); in the 3 mod 4 case it is C_2 for i = 0 and the semidihedral
    tower SD_{2^(atilde+2)} wr C_2 wr ... wr C_2 (i-1 factors) for i >= 1.
    """
    from .blocks import Case2

    if params.ell == 3 or params.case2 is Case2.ONE_MOD4:
        return wreath_tower(Cyclic(params.ell**params.a), params.ell, i)
    if i == 0:
        return Cyclic(2)
    return wreath_tower(SemiDihedral(2 ** (params.atilde + 2)), 2, i - 1)


def defect_group_spec(params) -> GroupSpec:
    """Symbolic defect group of the principal block: the product over the
    base-ell digits a_i of the weight of defect_factor(params, i)^a_i."""
    factors = tuple(
        (defect_factor(params, i), ai)
        for i, ai in enumerate(params.digits)
        if ai
    )
    return Product(factors)


def defect_derived_class_count(params, cap: int | None = None) -> tuple[int, bool]:
    """(value, exact) for k(D') of the defect group: the product of the
    per-digit derived class counts, exact when every factor was brute forced."""
    value, exact = 1, True
    for i, ai in enumerate(params.digits):
        if not ai:
            continue
        v, e = derived_class_count(defect_factor(params, i), cap)
        value *= v**ai
        exact = exact and e
    return value, exact
