"""Compositions of n into powers of 2 (OEIS A023359).

Exact values, residues mod 2^N, residue classification tables, 2-adic
limits of v(2^k + a), the binary partition companion b(n), and the real
asymptotics driven by the root of 1 - sum x^(2^k).
"""

from .analytic import (
    AsymptoticReport,
    RealApprox,
    asymptotic_report,
    eval_f,
    eval_f_prime,
    find_c,
    find_rho,
    log_big,
)
from .errors import (
    BracketError,
    BudgetError,
    CapacityError,
    OutOfRangeError,
    Pow2CompError,
    StabilizationError,
    TableValidationError,
    UnverifiedClassError,
)
from .exact import (
    ExactTable,
    brute_force_v,
    build_exact_table,
    check_sum_identity,
    sum_identity_sweep,
    v_exact,
)
from .modular import (
    ModTable,
    Residue,
    ResidueEvaluator,
    build_mod_table,
    default_evaluator,
    in_support,
    support_mask,
    square_lift_holds,
    v_even_conv,
    v_mod_sparse,
    v_odd_conv,
)
from .padic import (
    PolynomialSpec,
    TwoAdicApprox,
    poly_limit_check,
    poly_nullity_check,
    theta,
    theta0_mod32,
)
from .partition import (
    PartitionTable,
    b_mod32_formula_check,
    brute_force_b,
    build_partition_table,
    mu_exponent,
    rodseth_gupta_check,
    rudin_shapiro,
    thue_morse,
)
from .sparse import SparseIndex, s2
from .tables import (
    ClassPattern,
    CongruenceTable,
    TableEntry,
    classify,
    default_cap,
    lazy_table,
    load_table,
    mod4_formula_check,
    save_table,
    sharpness_scan,
    synthesize,
    synthesize_pattern,
    verify_paper_tables,
)
from .verify import run_suite, run_suites

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AsymptoticReport",
    "BracketError",
    "BudgetError",
    "CapacityError",
    "ClassPattern",
    "CongruenceTable",
    "ExactTable",
    "ModTable",
    "OutOfRangeError",
    "PartitionTable",
    "PolynomialSpec",
    "Pow2CompError",
    "RealApprox",
    "Residue",
    "ResidueEvaluator",
    "SparseIndex",
    "StabilizationError",
    "TableEntry",
    "TableValidationError",
    "TwoAdicApprox",
    "UnverifiedClassError",
    "asymptotic_report",
    "b_mod32_formula_check",
    "brute_force_b",
    "brute_force_v",
    "build_exact_table",
    "build_mod_table",
    "build_partition_table",
    "check_sum_identity",
    "classify",
    "default_cap",
    "default_evaluator",
    "eval_f",
    "eval_f_prime",
    "find_c",
    "find_rho",
    "in_support",
    "lazy_table",
    "load_table",
    "log_big",
    "mod4_formula_check",
    "mu_exponent",
    "poly_limit_check",
    "poly_nullity_check",
    "rodseth_gupta_check",
    "rudin_shapiro",
    "run_suite",
    "run_suites",
    "s2",
    "save_table",
    "sharpness_scan",
    "square_lift_holds",
    "sum_identity_sweep",
    "support_mask",
    "synthesize",
    "synthesize_pattern",
    "theta",
    "theta0_mod32",
    "thue_morse",
    "v_even_conv",
    "v_exact",
    "v_mod_sparse",
    "v_odd_conv",
    "verify_paper_tables",
]
