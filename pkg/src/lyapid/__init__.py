"""Identifiability of graphical continuous Lyapunov models.

Decides whether the drift matrix of an Ornstein-Uhlenbeck-type model with
sparsity pattern given by a directed graph can be recovered from the
equilibrium covariance matrix, using exact rational linear algebra
throughout.  See the README for the library tour and the command-line
interface.
"""

from .graphs import (
    DiGraph,
    EnumPolicy,
    canonical_form,
    enumerate_candidates,
    graph_from_json,
    graph_to_json,
    has_trek,
    is_dag,
    is_simple,
    necessary_criterion,
    no_trek_pairs,
    relabel,
    subgraph,
)
from .identifiability import (
    Certificate,
    ClassifyConfig,
    IdentClass,
    IdentVerdict,
    PositivityReport,
    RankSample,
    check_generic,
    check_generic_via_kernel,
    check_global,
    classify,
    cycle3_determinant_identity,
    dag_determinant_identity,
    positivity_sample,
)
from .linalg import (
    Polynomial,
    RatMatrix,
    Rational,
    SolutionSet,
    char_poly,
    commutation_matrix,
    det,
    format_matrix_csv,
    inverse,
    is_positive_definite,
    is_stable,
    kron,
    parse_matrix_csv,
    rank,
    rat,
    solve_linear,
    vec,
    vech,
)
from .lyapunov import (
    CovMatrix,
    DriftMatrix,
    FiberResult,
    NotStableError,
    SingularSumError,
    VolatilityMatrix,
    atilde,
    build_A,
    build_A_product,
    build_H,
    fiber,
    kronecker_sum,
    restrict_A,
    restrict_H,
    sample_stable_drift,
    skew_to_drift,
    solve_for_sigma,
)
from .sweep import SweepReport, SweepRow, run_sweep

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ClassifyConfig",
    "CovMatrix",
    "DiGraph",
    "DriftMatrix",
    "EnumPolicy",
    "FiberResult",
    "IdentClass",
    "IdentVerdict",
    "NotStableError",
    "Polynomial",
    "PositivityReport",
    "RankSample",
    "RatMatrix",
    "Rational",
    "SingularSumError",
    "SolutionSet",
    "SweepReport",
    "SweepRow",
    "VolatilityMatrix",
    "atilde",
    "build_A",
    "build_A_product",
    "build_H",
    "canonical_form",
    "char_poly",
    "check_generic",
    "check_generic_via_kernel",
    "check_global",
    "classify",
    "commutation_matrix",
    "cycle3_determinant_identity",
    "dag_determinant_identity",
    "det",
    "enumerate_candidates",
    "fiber",
    "format_matrix_csv",
    "graph_from_json",
    "graph_to_json",
    "has_trek",
    "inverse",
    "is_dag",
    "is_positive_definite",
    "is_simple",
    "is_stable",
    "kron",
    "kronecker_sum",
    "necessary_criterion",
    "no_trek_pairs",
    "parse_matrix_csv",
    "positivity_sample",
    "rank",
    "rat",
    "relabel",
    "restrict_A",
    "restrict_H",
    "run_sweep",
    "sample_stable_drift",
    "skew_to_drift",
    "solve_for_sigma",
    "solve_linear",
    "subgraph",
    "vec",
    "vech",
]
