"""Benchmark harness: seeded reproductions of the two block-structure
families, with per-stage wall times, operation counters, and bit-length
highwater marks.

Suite "paper71" builds one factor with chain lengths (3, 2, 2, 1, 1, 1), so
the matrix order is 10*d; suite "paper72" builds four factors with chain
lengths (5), (2), (1), (1) where the second simple factor has degree 2d,
and restricts the pipeline to the degree-d repeated factor.  Absolute
timings are hardware-bound; the structural results are asserted by the
test suite, not here.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .annihilator import build_annihilator_table
from .chains import jordan_chains, verify_chain
from .genmat import SplitMix64, block_matrix, block_spec, random_irreducible_poly, scramble
from .krylov import chain_basis, generating_set
from .matrix import Matrix, counters, mat_poly_eval, max_bit_length
from .poly import PolyQ

PAPER71_CHAINS = (3, 2, 2, 1, 1, 1)
PAPER72_CHAINS = ((5,), (2,), (1,), (1,))


@dataclass
class BenchRow:
    """One suite case: structure, stage seconds, and exactness diagnostics."""

    suite: str
    degree: int
    order: int
    use_reduction: bool
    stage_seconds: dict[str, float]
    total_seconds: float
    mat_vec: int
    mat_mat: int
    max_entry_bits: int
    max_intermediate_bits: int
    chain_lengths: tuple[int, ...]
    verified: bool

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "degree": self.degree,
            "order": self.order,
            "use_reduction": self.use_reduction,
            "stage_seconds": {k: round(v, 6) for k, v in self.stage_seconds.items()},
            "total_seconds": round(self.total_seconds, 6),
            "mat_vec": self.mat_vec,
            "mat_mat": self.mat_mat,
            "max_entry_bits": self.max_entry_bits,
            "max_intermediate_bits": self.max_intermediate_bits,
            "chain_lengths": list(self.chain_lengths),
            "verified": self.verified,
        }


def build_suite_case(name: str, degree: int, seed: int) -> tuple[Matrix, PolyQ, dict]:
    """Deterministic test matrix for one suite case.

    Returns the scrambled matrix, the repeated factor of interest, and the
    planted chain-length multisets per factor.
    """
    rng = SplitMix64((seed << 8) ^ degree)
    if name == "paper71":
        f = random_irreducible_poly(rng, degree, constant=5)
        spec = block_spec([(f, PAPER71_CHAINS)])
    elif name == "paper72":
        f = random_irreducible_poly(rng, degree, constant=5)
        g1 = random_irreducible_poly(rng, degree, constant=7, exclude=[f])
        g2 = random_irreducible_poly(rng, 2 * degree, constant=5)
        g3 = random_irreducible_poly(rng, degree, constant=3, exclude=[f, g1])
        blocks = list(zip([f, g1, g2, g3], PAPER72_CHAINS))
        spec = block_spec(blocks)
    else:
        raise ValueError(f"unknown suite: {name!r} (expected paper71 or paper72)")
    a = scramble(block_matrix(spec), seed=rng.next_u64())
    return a, f, spec.chain_multisets()


def run_suite_case(name: str, degree: int, seed: int, use_reduction: bool = True,
                   verify: bool = True) -> BenchRow:
    """Time every pipeline stage for one case, restricted to the repeated
    factor (the annihilator table itself is reported as its own stage)."""
    a, f, planted = build_suite_case(name, degree, seed)
    n = a.shape[0]
    ops_before = counters.snapshot()
    stages: dict[str, float] = {}
    max_bits = 0
    t_total = time.perf_counter()

    t0 = time.perf_counter()
    table = build_annihilator_table(a)
    stages["annihilator_table"] = time.perf_counter() - t0

    data = table.factor_data(f)
    multiplicity = data.char_multiplicity

    t0 = time.perf_counter()
    fa = mat_poly_eval(f, a)
    stages["factor_matrix"] = time.perf_counter() - t0
    max_bits = max(max_bits, max_bit_length(fa))

    t0 = time.perf_counter()
    genset = generating_set(a, f, table)
    stages["generating_set"] = time.perf_counter() - t0
    for vs in genset.levels.values():
        for v in vs:
            max_bits = max(max_bits, max_bit_length(v))

    elim_stats: dict = {}
    t0 = time.perf_counter()
    basis = chain_basis(fa, a, genset, multiplicity, f.degree,
                        use_reduction=use_reduction, stats=elim_stats)
    elapsed = time.perf_counter() - t0
    stages["reduction"] = elim_stats.get("reduction_seconds", 0.0)
    stages["elimination"] = elapsed - stages["reduction"]
    max_bits = max(max_bits, elim_stats.get("max_bits", 0))

    t0 = time.perf_counter()
    chains = jordan_chains(a, fa, f, basis)
    stages["chains"] = time.perf_counter() - t0
    for chain in chains:
        for pv in chain.vectors:
            for vec in pv.coeff_vectors:
                max_bits = max(max_bits, max_bit_length(vec))

    verified = True
    if verify:
        t0 = time.perf_counter()
        verified = all(verify_chain(a, f, chain).passed for chain in chains)
        stages["verification"] = time.perf_counter() - t0

    total = time.perf_counter() - t_total
    ops_after = counters.snapshot()
    lengths = tuple(sorted(chain.length for chain in chains))
    if lengths != planted[f.coeffs]:
        raise ArithmeticError(
            f"recovered chain lengths {lengths} differ from planted {planted[f.coeffs]}"
        )
    return BenchRow(
        suite=name,
        degree=degree,
        order=n,
        use_reduction=use_reduction,
        stage_seconds=stages,
        total_seconds=total,
        mat_vec=ops_after["mat_vec"] - ops_before["mat_vec"],
        mat_mat=ops_after["mat_mat"] - ops_before["mat_mat"],
        max_entry_bits=max_bit_length(a),
        max_intermediate_bits=max_bits,
        chain_lengths=lengths,
        verified=verified,
    )


def bench_suite(name: str, degrees: list[int], seed: int, use_reduction: bool = True,
                verify: bool = True) -> list[BenchRow]:
    """Run one suite over the given factor degrees, sequentially (timing
    fidelity).  Empty degree lists produce an empty table."""
    return [run_suite_case(name, d, seed, use_reduction, verify) for d in degrees]


def format_table(rows: list[BenchRow]) -> str:
    if not rows:
        return "(empty benchmark table)\n"
    stage_names = ["annihilator_table", "factor_matrix", "generating_set",
                   "elimination", "reduction", "chains", "verification"]
    header = (f"{'suite':<8} {'deg':>4} {'n':>5} {'red':>4} {'total':>9} "
              + " ".join(f"{s[:10]:>10}" for s in stage_names)
              + f" {'mat_vec':>8} {'mat_mat':>8} {'bits':>6} chains")
    lines = [header, "-" * len(header)]
    for r in rows:
        stage_text = " ".join(f"{r.stage_seconds.get(s, 0.0):>10.3f}" for s in stage_names)
        lines.append(
            f"{r.suite:<8} {r.degree:>4} {r.order:>5} {'on' if r.use_reduction else 'off':>4} "
            f"{r.total_seconds:>9.3f} {stage_text} {r.mat_vec:>8} {r.mat_mat:>8} "
            f"{r.max_intermediate_bits:>6} {list(r.chain_lengths)}"
        )
    return "\n".join(lines) + "\n"
