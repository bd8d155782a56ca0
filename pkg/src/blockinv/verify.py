"""Verification of the two character-count inequalities

    (C1)  k(B) <= k_0(B) * k(D')        (C2)  k(B) <= l(B) * k(D)

over parameter grids, for principal blocks of general linear/unitary groups
and for unipotent 3-blocks of special linear/unitary groups (where the
quotient forms of the inequalities are checked through the covering general
linear block).

Every quantity in a report carries its source: "exact", or a certified
"lower-bound"/"upper-bound".  A point is Verified when the inequality holds
with the recorded sources (which is then sound regardless of slack),
Violated only when it fails with all sources exact, and Inconclusive when a
bound was too weak to decide.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

from .blocks import (
    BlockParams,
    k0_B,
    k_B,
    k_B_sl_coprime,
    k_B_sl_upper,
    k_B_sl_w3_exact,
    l_B_lower,
    sl_k0_lower,
    sl_l_lower,
    sl_params,
)
from .groups import class_count, defect_derived_class_count, defect_group_spec

VERIFIED = "Verified"
INCONCLUSIVE = "Inconclusive"
VIOLATED = "Violated"

EXACT = "exact"
LOWER = "lower-bound"
UPPER = "upper-bound"


@dataclass(frozen=True)
class Sourced:
    value: int
    source: str


@dataclass(frozen=True)
class ConjectureReport:
    mode: str
    ell: int
    case: str
    a: int
    atilde: int | None
    d: int
    w: int
    kB: Sourced
    k0B: Sourced
    lB_lower: int
    kD: Sourced
    kDprime: Sourced
    c1: str
    c2: str
    note: str = ""


def _verdict(holds: bool, exact_sources: bool) -> str:
    if holds:
        return VERIFIED
    return VIOLATED if exact_sources else INCONCLUSIVE


def check_conjecture_gl(params: BlockParams, cap: int | None = None) -> ConjectureReport:
    """Exact check of (C1) and (C2) for a principal block of a general
    linear/unitary group."""
    kb = Sourced(k_B(params), EXACT)
    k0 = Sourced(k0_B(params), EXACT)
    lb = l_B_lower(params)
    kd = Sourced(class_count(defect_group_spec(params)), EXACT)
    dp_value, dp_exact = defect_derived_class_count(params, cap)
    kdp = Sourced(dp_value, EXACT if dp_exact else LOWER)

    c1 = _verdict(kb.value <= k0.value * kdp.value, dp_exact)
    # l(B) enters only as a lower bound, so a failed comparison is never a
    # proven violation
    c2 = _verdict(kb.value <= lb * kd.value, False)
    return ConjectureReport(
        mode="gl",
        ell=params.ell,
        case=params.case2.value if params.ell == 2 else "-",
        a=params.a,
        atilde=params.atilde,
        d=params.d,
        w=params.w,
        kB=kb,
        k0B=k0,
        lB_lower=lb,
        kD=kd,
        kDprime=kdp,
        c1=c1,
        c2=c2,
    )


# exact small-case values for the special linear verification (w = 3, a = 1):
# the defect group has derived subgroup of order 3, and the relevant quotient
# defect group is abelian of order 9
_SL_KDPRIME_EXACT = {(1, 3): 3}
_SL_KD_LOWER = {(1, 3): 9}


def check_conjecture_sl(a: int, w: int, cap: int | None = None) -> ConjectureReport:
    """Check (C1) and (C2) for the unipotent 3-block of a special
    linear/unitary group with 3^a the exact power of 3 in q - epsilon.

    For 3 | w the quotient forms of the inequalities are verified: k(B) is
    bounded through the covering general linear block, and the defect-group
    class counts are divided by the central contributions 3^(a+m) and
    3^(m+delta)."""
    slp = sl_params(a, w)
    gl_params = BlockParams.gl3(a, 1, w)
    notes = []

    if w % 3:
        kb = Sourced(k_B_sl_coprime(a, w), EXACT)
        notes.append("weight coprime to 3: exact count from the covering block")
    elif w == 3:
        kb = Sourced(k_B_sl_w3_exact(a), EXACT)
    else:
        kb = Sourced(k_B_sl_upper(a, w), UPPER)

    k0_value, k0_exact = sl_k0_lower(a, w)
    k0 = Sourced(k0_value, EXACT if k0_exact else LOWER)
    lb = sl_l_lower(a, w)

    kd_tilde = class_count(defect_group_spec(gl_params))
    kd_value = -(-kd_tilde // 3 ** (a + slp.m))
    kd_value = max(kd_value, _SL_KD_LOWER.get((a, w), 0))
    if w == 3:
        kd_value = max(kd_value, 3 ** (2 * a - 2))
    kd = Sourced(kd_value, LOWER)

    override = _SL_KDPRIME_EXACT.get((a, w))
    if override is not None:
        kdp = Sourced(override, EXACT)
    else:
        dp_tilde, _ = defect_derived_class_count(gl_params, cap)
        kdp_value = -(-dp_tilde // 3 ** (slp.m + slp.delta))
        if w == 3:
            kdp_value = max(kdp_value, 3 ** (2 * a - 2))
        kdp = Sourced(kdp_value, LOWER)

    c1 = _verdict(
        kb.value <= k0.value * kdp.value,
        kb.source == EXACT and k0.source == EXACT and kdp.source == EXACT,
    )
    c2 = _verdict(kb.value <= lb * kd.value, False)
    return ConjectureReport(
        mode="sl",
        ell=3,
        case="-",
        a=a,
        atilde=None,
        d=1,
        w=w,
        kB=kb,
        k0B=k0,
        lB_lower=lb,
        kD=kd,
        kDprime=kdp,
        c1=c1,
        c2=c2,
        note="; ".join(notes),
    )


def check_conjecture(params, mode: str = "gl", cap: int | None = None) -> ConjectureReport:
    if mode == "gl":
        return check_conjecture_gl(params, cap)
    if mode == "sl":
        if isinstance(params, BlockParams):
            if params.ell != 3:
                raise ValueError("special linear mode requires ell = 3")
            return check_conjecture_sl(params.a, params.w, cap)
        a, w = params
        return check_conjecture_sl(a, w, cap)
    raise ValueError(f"unknown mode {mode!r}")


# --- sweeps -------------------------------------------------------------------

@dataclass(frozen=True)
class SweepGrid:
    """One rectangular block of parameter combinations."""

    mode: str = "gl"
    ell: int = 3
    case: str = "both"  # 1mod4 | 3mod4 | both (ell = 2 only)
    a: tuple[int, ...] = (1, 2, 3)
    atilde: tuple[int, ...] = (2, 3, 4, 5, 6)
    d: tuple[int, ...] = (1, 2)
    w: tuple[int, ...] = tuple(range(1, 31))

    def points(self):
        """Deterministic iteration order over the grid."""
        if self.mode == "sl":
            for a in self.a:
                for w in self.w:
                    yield ("sl", (a, w))
            return
        if self.ell == 3:
            for a in self.a:
                for d in self.d:
                    for w in self.w:
                        yield ("gl", BlockParams.gl3(a, d, w))
            return
        cases = ("1mod4", "3mod4") if self.case == "both" else (self.case,)
        for case in cases:
            if case == "1mod4":
                for a in self.a:
                    for w in self.w:
                        yield ("gl", BlockParams.gl2_1mod4(a, w))
            else:
                for at in self.atilde:
                    for w in self.w:
                        yield ("gl", BlockParams.gl2_3mod4(at, w))


def default_grids() -> list[SweepGrid]:
    """The standard verification sweep: both ell = 3 orders, both mod-4
    cases for ell = 2, and the special linear weights divisible by 3."""
    return [
        SweepGrid(mode="gl", ell=3, a=(1, 2, 3), d=(1, 2), w=tuple(range(1, 31))),
        SweepGrid(mode="gl", ell=2, case="1mod4", a=(2, 3, 4, 5, 6), w=tuple(range(1, 31))),
        SweepGrid(mode="gl", ell=2, case="3mod4", atilde=(2, 3, 4, 5, 6), w=tuple(range(1, 31))),
        SweepGrid(mode="sl", a=(1, 2, 3), w=(3, 6, 9, 12)),
    ]


def sweep(grids, workers: int = 1, cap: int | None = None) -> list[ConjectureReport]:
    """Evaluate every grid point; report order matches iteration order
    regardless of worker count."""
    if isinstance(grids, SweepGrid):
        grids = [grids]
    points = [pt for grid in grids for pt in grid.points()]

    def run(pt):
        mode, params = pt
        return check_conjecture(params, mode=mode, cap=cap)

    if workers <= 1:
        return [run(pt) for pt in points]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, points))


# --- reports ------------------------------------------------------------------

_CSV_FIELDS = [
    "mode", "ell", "case", "a", "atilde", "d", "w",
    "kB", "kB_source", "k0B", "k0B_source", "lB_lower",
    "kD", "kD_source", "kDprime", "kDprime_source", "c1", "c2", "note",
]


def _row(report: ConjectureReport) -> dict:
    return {
        "mode": report.mode,
        "ell": report.ell,
        "case": report.case,
        "a": report.a,
        "atilde": "" if report.atilde is None else report.atilde,
        "d": report.d,
        "w": report.w,
        "kB": report.kB.value,
        "kB_source": report.kB.source,
        "k0B": report.k0B.value,
        "k0B_source": report.k0B.source,
        "lB_lower": report.lB_lower,
        "kD": report.kD.value,
        "kD_source": report.kD.source,
        "kDprime": report.kDprime.value,
        "kDprime_source": report.kDprime.source,
        "c1": report.c1,
        "c2": report.c2,
        "note": report.note,
    }


def emit_report(reports: list[ConjectureReport], fmt: str = "json") -> bytes:
    """Serialize reports with a stable field order; markdown reproduces the
    per-weight table columns (k^w(B), and the certified lower bounds for
    k0(B)*k(D') and l(B)*k(D))."""
    if fmt == "json":
        payload = {
            "reports": [asdict(r) for r in reports],
            "summary": summarize(reports),
        }
        return (json.dumps(payload, indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=_CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        for r in reports:
            writer.writerow(_row(r))
        return buf.getvalue().encode()
    if fmt == "markdown":
        lines = [
            "| mode | ell | case | a | atilde | d | w | k^w(B) | k0(B)*k(D') >= | l(B)*k(D) >= | C1 | C2 |",
            "|---|---|---|---|---|---|---|---|---|---|---|---|",
        ]
        for r in reports:
            at = "-" if r.atilde is None else r.atilde
            lines.append(
                f"| {r.mode} | {r.ell} | {r.case} | {r.a} | {at} | {r.d} | {r.w} "
                f"| {r.kB.value} | {r.k0B.value * r.kDprime.value} "
                f"| {r.lB_lower * r.kD.value} | {r.c1} | {r.c2} |"
            )
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown report format {fmt!r}")


def summarize(reports: list[ConjectureReport]) -> dict:
    counts = {VERIFIED: 0, INCONCLUSIVE: 0, VIOLATED: 0}
    for r in reports:
        counts[r.c1] += 1
        counts[r.c2] += 1
    return {
        "points": len(reports),
        "verified": counts[VERIFIED],
        "inconclusive": counts[INCONCLUSIVE],
        "violated": counts[VIOLATED],
    }


def exit_code(reports: list[ConjectureReport]) -> int:
    """0: all Verified; 2: some Inconclusive, none Violated; 1: any Violated."""
    summary = summarize(reports)
    if summary["violated"]:
        return 1
    if summary["inconclusive"]:
        return 2
    return 0
