"""blockinv: exact block-theoretic invariants of general linear/unitary
groups and certified verification of the Malle-Navarro inequalities."""

from .partitions import (
    binomial,
    ell_adic_digits,
    ell_decomposition_count,
    enumerate_ell_decompositions,
    enumerate_splits,
    multipartition_count,
    partition_count,
)
from .blocks import (
    BlockParams,
    Case2,
    LevelWeights,
    SLParams,
    derive_params,
    k0_B,
    k0_B_gl2,
    k0_B_gl3,
    k_B,
    k_B_gl2,
    k_B_gl3,
    k_B_sl_coprime,
    k_B_sl_upper,
    k_B_sl_w3_exact,
    l_B_lower,
    level_weights,
    sl_params,
    weighted_decomposition_sum,
)
from .groups import (
    Cyclic,
    GroupSpec,
    GroupSpecError,
    GroupSpecSyntaxError,
    Product,
    SemiDihedral,
    Wreath,
    class_count,
    defect_group_spec,
    derived_class_count,
    group_order,
    parse_group_spec,
    realize,
    spec_str,
)
from .permgroup import CapExceeded, PermGroup, brute_class_count, derived_subgroup
from .bounds import BoundExpr, Verdict, compare_ge, compare_le, expr_floor
from .ledger import (
    InequalityReport,
    check_all,
    check_lemma,
    k_D_lower,
    k_D_prime_lower,
    sl_k_D_bar_lower,
    sl_k_D_bar_prime_lower,
)
from .verify import (
    ConjectureReport,
    SweepGrid,
    check_conjecture,
    default_grids,
    emit_report,
    sweep,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
