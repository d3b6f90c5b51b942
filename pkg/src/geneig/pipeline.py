"""End-to-end driver: factor the characteristic polynomial and emit the
generalized eigenspace of every irreducible factor as symbolic Jordan chains.

The per-factor stage composition is fixed: evaluate f(A), collect the
Krylov generating set from the annihilator table, eliminate it to chain
seeds, convert seeds to chains.  ``run_full`` loops that over all factors
(optionally in parallel), assembles a report with exact structural
identities asserted, and can verify every chain symbolically.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .annihilator import AnnihilatorTable, build_annihilator_table
from .chains import ChainVerification, JordanChain, jordan_chains, verify_chain
from .krylov import ChainBasis, chain_basis, generating_set
from .matrix import Matrix, as_matrix, check_square, counters, mat_poly_eval
from .poly import Factorization, PolyQ, format_poly
from .rationals import format_rational


@dataclass
class PipelineOptions:
    """Knobs shared by the CLI and the library entry points."""

    use_reduction: bool = True       # generating-set reduction heuristic
    verify: bool = False             # symbolic chain verification per chain
    jobs: int = 1                    # factors processed in parallel
    factor: PolyQ | None = None      # restrict to a single irreducible factor
    min_poly_method: str = "auto"
    char_method: str = "auto"


@dataclass
class FactorReport:
    """Everything computed for one irreducible factor."""

    factor: PolyQ
    char_multiplicity: int
    min_multiplicity: int
    basis_counts: dict[int, int]
    chains: list[JordanChain]
    verifications: list[ChainVerification] | None
    timings: dict[str, float]
    stats: dict

    @property
    def degree(self) -> int:
        return self.factor.degree

    @property
    def all_verified(self) -> bool | None:
        if self.verifications is None:
            return None
        return all(v.passed for v in self.verifications)


@dataclass
class EigenstructureReport:
    """Full eigenstructure of one matrix, with exact bookkeeping."""

    n: int
    char_factorization: Factorization
    factor_reports: list[FactorReport]
    timings: dict[str, float]
    op_counts: dict[str, int]
    verified: bool | None = None
    table: AnnihilatorTable | None = field(default=None, repr=False)

    def factor_report(self, f: PolyQ) -> FactorReport:
        for fr in self.factor_reports:
            if fr.factor == f:
                return fr
        raise KeyError(f"no report for factor {f}")


def generalized_eigenspace(
    a: Matrix,
    f: PolyQ,
    table: AnnihilatorTable,
    multiplicity: int,
    options: PipelineOptions | None = None,
    fa: Matrix | None = None,
) -> list[JordanChain]:
    """Jordan chains spanning the generalized eigenspace of the roots of f."""
    return _factor_pipeline(a, f, table, multiplicity, options or PipelineOptions(), fa).chains


def _factor_pipeline(
    a: Matrix,
    f: PolyQ,
    table: AnnihilatorTable,
    multiplicity: int,
    options: PipelineOptions,
    fa: Matrix | None = None,
) -> FactorReport:
    data = table.factor_data(f)  # raises for non-factors
    if multiplicity != data.char_multiplicity:
        raise ValueError(
            f"multiplicity {multiplicity} does not match the characteristic "
            f"polynomial (expected {data.char_multiplicity})"
        )
    timings: dict[str, float] = {}
    stats: dict = {}

    t0 = time.perf_counter()
    if fa is None:
        fa = table.factor_matrix(f)
    timings["factor_matrix"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    genset = generating_set(a, f, table)
    timings["generating_set"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    basis = chain_basis(
        fa, a, genset, multiplicity, f.degree,
        use_reduction=options.use_reduction, stats=stats,
    )
    timings["elimination"] = time.perf_counter() - t0 - stats.get("reduction_seconds", 0.0)
    timings["reduction"] = stats.get("reduction_seconds", 0.0)

    t0 = time.perf_counter()
    chains = jordan_chains(a, fa, f, basis)
    timings["chains"] = time.perf_counter() - t0

    if sum(chain.length for chain in chains) != multiplicity:
        raise ArithmeticError("chain lengths do not sum to the factor multiplicity")

    verifications = None
    if options.verify:
        t0 = time.perf_counter()
        verifications = [verify_chain(a, f, chain) for chain in chains]
        timings["verification"] = time.perf_counter() - t0

    return FactorReport(
        factor=f,
        char_multiplicity=multiplicity,
        min_multiplicity=data.min_multiplicity,
        basis_counts=basis.counts(),
        chains=chains,
        verifications=verifications,
        timings=timings,
        stats=stats,
    )


def run_full(a, options: PipelineOptions | None = None) -> EigenstructureReport:
    """Characteristic factorization, annihilator table, then one
    generalized eigenspace per irreducible factor (ascending degree then
    coefficient order)."""
    options = options or PipelineOptions()
    a = as_matrix(a)
    n = check_square(a)
    if n == 0:
        raise ValueError("cannot analyze an empty matrix")
    ops_before = counters.snapshot()
    timings: dict[str, float] = {}

    t0 = time.perf_counter()
    table = build_annihilator_table(
        a, min_poly_method=options.min_poly_method, char_method=options.char_method
    )
    timings["annihilator_table"] = time.perf_counter() - t0

    if sum(f.degree * m for f, m in table.char_factorization) != n:
        raise ArithmeticError("factor degrees do not sum to the matrix order")

    selected = list(table.char_factorization)
    if options.factor is not None:
        wanted = options.factor.monic()
        selected = [(f, m) for f, m in selected if f == wanted]
        if not selected:
            raise ValueError(f"{format_poly(options.factor)} is not an irreducible factor "
                             "of the characteristic polynomial")

    t0 = time.perf_counter()
    if options.jobs > 1 and len(selected) > 1:
        with ThreadPoolExecutor(max_workers=options.jobs) as pool:
            factor_reports = list(
                pool.map(lambda fm: _factor_pipeline(a, fm[0], table, fm[1], options), selected)
            )
    else:
        factor_reports = [_factor_pipeline(a, f, table, m, options) for f, m in selected]
    timings["eigenspaces"] = time.perf_counter() - t0

    verified: bool | None = None
    if options.verify:
        verified = all(fr.all_verified for fr in factor_reports)

    ops_after = counters.snapshot()
    op_counts = {key: ops_after[key] - ops_before[key] for key in ops_after}
    return EigenstructureReport(
        n=n,
        char_factorization=table.char_factorization,
        factor_reports=factor_reports,
        timings=timings,
        op_counts=op_counts,
        verified=verified,
        table=table,
    )


# -- JSON emission ----------------------------------------------------------


def chain_to_json(chain: JordanChain) -> dict:
    return {
        "length": chain.length,
        "vectors": [
            {
                "lambda_coeffs": [
                    [format_rational(e) for e in coeff_vec]
                    for coeff_vec in pv.coeff_vectors
                ]
            }
            for pv in chain.vectors
        ],
    }


def factor_eigenspace_json(fr: FactorReport) -> dict:
    """The wire schema for one factor: exactly these four keys."""
    return {
        "factor": [format_rational(c) for c in fr.factor.coeffs],
        "multiplicity": fr.char_multiplicity,
        "lbar": fr.min_multiplicity,
        "chains": [chain_to_json(chain) for chain in fr.chains],
    }


def report_to_json(report: EigenstructureReport) -> dict:
    details = []
    for fr in report.factor_reports:
        entry = {
            "factor": [format_rational(c) for c in fr.factor.coeffs],
            "basis_counts": {str(rank): count for rank, count in fr.basis_counts.items()},
            "timings": fr.timings,
            "stats": {k: v for k, v in fr.stats.items()},
        }
        if fr.verifications is not None:
            entry["verification"] = [
                [{"identity": label, "passed": ok} for label, ok in v.checks]
                for v in fr.verifications
            ]
        details.append(entry)
    return {
        "n": report.n,
        "factorization": {
            "unit": format_rational(report.char_factorization.unit),
            "factors": [
                {"coeffs": [format_rational(c) for c in f.coeffs], "multiplicity": m}
                for f, m in report.char_factorization
            ],
        },
        "eigenspaces": [factor_eigenspace_json(fr) for fr in report.factor_reports],
        "details": details,
        "timings": report.timings,
        "counters": report.op_counts,
        "verified": report.verified,
    }
