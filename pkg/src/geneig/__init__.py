"""Exact generalized eigenspaces of rational matrices as symbolic Jordan chains.

Everything is computed in exact rational arithmetic; eigenvectors come out
as vectors of polynomials in a symbol standing for the eigenvalue and all
its conjugates, so no algebraic-number arithmetic is ever needed.
"""

from .annihilator import AnnihilatorTable, build_annihilator_table, minimal_polynomial
from .chains import (
    DifferenceQuotientPowers,
    JordanChain,
    PolyVector,
    chain_from_seed,
    jordan_chains,
    verify_chain,
)
from .echelon import EchelonState, echelon_insert, exact_rank, simultaneous_reduce
from .estimator import GeneralizedEigenspaceDecomposition
from .genmat import BlockSpec, block_matrix, companion_matrix, scramble
from .krylov import (
    ChainBasis,
    GeneratorSet,
    chain_basis,
    certify_chain_basis,
    factor_rank,
    generating_set,
    reduce_generating_set,
)
from .matrix import (
    as_matrix,
    as_vector,
    char_poly,
    counters,
    mat_mul,
    mat_poly_apply_vec,
    mat_poly_eval,
    mat_vec,
)
from .pipeline import (
    EigenstructureReport,
    PipelineOptions,
    generalized_eigenspace,
    report_to_json,
    run_full,
)
from .poly import (
    Factorization,
    PolyQ,
    factor_rationals,
    parse_poly,
    poly_divrem,
    poly_gcd,
    poly_lcm,
    squarefree_decomposition,
)

__version__ = "0.1.0"

__all__ = [
    "AnnihilatorTable",
    "BlockSpec",
    "ChainBasis",
    "DifferenceQuotientPowers",
    "EchelonState",
    "EigenstructureReport",
    "Factorization",
    "GeneralizedEigenspaceDecomposition",
    "GeneratorSet",
    "JordanChain",
    "PipelineOptions",
    "PolyQ",
    "PolyVector",
    "as_matrix",
    "as_vector",
    "block_matrix",
    "build_annihilator_table",
    "certify_chain_basis",
    "chain_basis",
    "chain_from_seed",
    "char_poly",
    "companion_matrix",
    "counters",
    "echelon_insert",
    "exact_rank",
    "factor_rank",
    "factor_rationals",
    "generalized_eigenspace",
    "generating_set",
    "jordan_chains",
    "mat_mul",
    "mat_poly_apply_vec",
    "mat_poly_eval",
    "mat_vec",
    "minimal_polynomial",
    "parse_poly",
    "poly_divrem",
    "poly_gcd",
    "poly_lcm",
    "reduce_generating_set",
    "report_to_json",
    "run_full",
    "scramble",
    "simultaneous_reduce",
    "squarefree_decomposition",
    "verify_chain",
]
