"""Krylov generators of the kernel tower and chain-seed extraction.

For an irreducible factor f of the characteristic polynomial, the kernel
tower ker f(A) < ker f(A)^2 < ... < ker f(A)^lbar is generated by the
cofactor images g_e(A)e of the basis vectors whose minimal annihilating
polynomial contains f.  ``chain_basis`` eliminates that generating set,
highest rank first, down to a family of seeds whose Krylov spans decompose
ker f(A)^lbar as a direct sum; every seed of rank l then yields one Jordan
chain of length l.

The elimination tests membership of f(A)^(l-1) v against the reduced column
family W while replaying the identical combination on the raw companion
family S (simultaneous column reduction), so accepted and demoted residuals
are exact linear combinations of the original generators.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field


import numpy as np

from .annihilator import AnnihilatorTable
from .echelon import EchelonState
from .matrix import (
    Matrix,
    Vector,
    is_zero_vector,
    mat_poly_apply_vec,
    mat_vec,
    max_bit_length,
    primitive_vector,
    scale_to_match_primitive,
)
from .poly import PolyQ
from .rationals import lcm_int


def factor_rank(fa: Matrix, v: Vector, max_rank: int) -> int:
    """Smallest l >= 0 with f(A)^l v = 0; 0 only for v = 0.

    Raises if v survives max_rank applications, i.e. v is not in the
    kernel tower of height max_rank.
    """
    if is_zero_vector(v):
        return 0
    w = v
    for applications in range(1, max_rank + 1):
        w = mat_vec(fa, w)
        if is_zero_vector(w):
            return applications
    raise ValueError(f"vector is not in the kernel tower of height {max_rank}")


@dataclass
class GeneratorSet:
    """Krylov generators of ker f(A)^max_rank, partitioned by rank."""

    levels: dict[int, list[Vector]]
    degree: int
    max_rank: int

    def level(self, rank: int) -> list[Vector]:
        return self.levels.setdefault(rank, [])

    def total(self) -> int:
        return sum(len(vs) for vs in self.levels.values())


@dataclass
class ChainBasis:
    """Chain seeds by rank; each seed of rank l yields one chain of length l."""

    levels: dict[int, list[Vector]] = field(default_factory=dict)

    def level(self, rank: int) -> list[Vector]:
        return self.levels.get(rank, [])

    def counts(self) -> dict[int, int]:
        return {rank: len(vs) for rank, vs in sorted(self.levels.items()) if vs}

    def weighted_total(self) -> int:
        return sum(rank * len(vs) for rank, vs in self.levels.items())

    def seeds(self) -> list[tuple[int, Vector]]:
        """(rank, seed) pairs, rank descending, insertion order within rank."""
        out = []
        for rank in sorted(self.levels, reverse=True):
            out.extend((rank, v) for v in self.levels[rank])
        return out


def generating_set(a: Matrix, f: PolyQ, table: AnnihilatorTable) -> GeneratorSet:
    """Cofactor images g_e(A)e grouped by rank l_e, ascending basis index."""
    data = table.factor_data(f)  # raises if f does not divide char poly
    levels: dict[int, list[Vector]] = {rank: [] for rank in range(1, data.min_multiplicity + 1)}
    for e, exponent, cofactor in zip(table.basis, data.exponents, data.cofactors):
        if exponent == 0:
            continue
        vec = e if cofactor.degree == 0 else mat_poly_apply_vec(cofactor, a, e)
        levels[exponent].append(vec)
    return GeneratorSet(levels=levels, degree=f.degree, max_rank=data.min_multiplicity)


class CanonicalReducer:
    """Fully reduced (Gauss-Jordan) column echelon of primitive integer
    columns: each new pivot is also eliminated from the stored columns, so
    the state is always the canonical reduced basis of everything seen.

    Full reduction makes the elimination coefficients mutually
    independent, so a vector is reduced by one integer accumulation over a
    shared denominator instead of a sequential rational sweep; on the
    structured kernel data this keeps entries near the small canonical
    values instead of minor-sized fill-in.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.pivot_rows: list[int] = []
        self.columns: list[Vector] = []

    def reduce(self, v: Vector) -> Vector | None:
        """Canonical residual of *v* (primitive, appended as a new pivot
        column), or None when v is in the span of what was seen."""
        vec = primitive_vector(v)
        shared = 1
        for prow, col in zip(self.pivot_rows, self.columns):
            if vec[prow] != 0:
                shared = lcm_int(shared, int(col[prow]))
        if shared != 1:
            vec = shared * vec
        for prow, col in zip(self.pivot_rows, self.columns):
            c = vec[prow]
            if c != 0:
                vec = vec - (c // int(col[prow])) * col
        prow = next((i for i, e in enumerate(vec) if e != 0), None)
        if prow is None:
            return None
        residual = primitive_vector(vec)
        for k, col in enumerate(self.columns):
            c = col[prow]
            if c != 0:
                self.columns[k] = primitive_vector(residual[prow] * col - c * residual)
        self.pivot_rows.append(prow)
        self.columns.append(residual)
        return residual


def reduce_generating_set(fa: Matrix, genset: GeneratorSet, rank: int) -> GeneratorSet:
    """Column-reduce the rank-`rank` generators and re-rank the residuals.

    Nonzero residuals are normalized to primitive integer vectors and moved
    to the level matching their actual rank; zero residuals are dropped.
    Spans of the accumulated Krylov families are unchanged.
    """
    candidates = genset.levels.get(rank, [])
    if not candidates:
        return genset
    genset.levels[rank] = []
    reducer = CanonicalReducer(candidates[0].shape[0])
    for v in candidates:
        reducer.reduce(v)
    for col in reducer.columns:
        genset.level(factor_rank(fa, col, rank)).append(col)
    return genset


def stacked_chain_columns(fa: Matrix, a: Matrix, basis: ChainBasis, degree: int) -> Matrix:
    """All columns A^j f(A)^i b for b of rank l, 0 <= i < l, 0 <= j < degree."""
    cols: list[Vector] = []
    for rank, seed in basis.seeds():
        w = seed
        for i in range(rank):
            if i:
                w = mat_vec(fa, w)
            col = w
            for j in range(degree):
                if j:
                    col = mat_vec(a, col)
                cols.append(col)
    out = np.empty((a.shape[0], len(cols)), dtype=object)
    for k, col in enumerate(cols):
        out[:, k] = col
    return out


def certify_chain_basis(
    fa: Matrix,
    a: Matrix,
    basis: ChainBasis,
    multiplicity: int,
    degree: int,
    method: str = "auto",
) -> bool:
    """Certify that the stacked chain columns have full rank m*d.

    Full rank simultaneously establishes the direct-sum condition on the
    seeds' Krylov spans and that they span the whole kernel tower (whose
    dimension is m*d).  ``method="exact"`` forces Bareiss elimination;
    "auto" first tries a full-rank certificate modulo a prime (sufficient
    when it succeeds) and falls back to the exact rank.
    """
    from .echelon import CERTIFICATE_PRIMES, BadPrime, exact_rank, matrix_mod_p, rank_mod_p

    expected = multiplicity * degree
    stacked = stacked_chain_columns(fa, a, basis, degree)
    if stacked.shape[1] != expected:
        return False
    if method == "auto":
        for p in CERTIFICATE_PRIMES[:3]:
            try:
                if rank_mod_p(matrix_mod_p(stacked, p), p) == expected:
                    return True
            except BadPrime:
                continue
    return exact_rank(stacked) == expected


class EliminationError(RuntimeError):
    """The generating set contradicted the rank accounting; indicates a bug
    or an invalid (f, multiplicity) input, never a property of valid data."""


def chain_basis(
    fa: Matrix,
    a: Matrix,
    genset: GeneratorSet,
    multiplicity: int,
    degree: int,
    use_reduction: bool = True,
    stats: dict | None = None,
) -> ChainBasis:
    """Eliminate a generating set down to chain seeds, highest rank first.

    Follows the rank-descending control flow exactly: seed with the first
    maximal-rank generator, return early once the accepted ranks sum to the
    multiplicity, test each candidate v via simultaneous reduction of
    (f(A)^(l-1) v, v) against (W, S), accept independent residuals, demote
    dependent-but-nonzero ones to their actual rank, and multiply S by f(A)
    between rank levels.

    ``use_reduction`` toggles the generating-set reduction heuristic.  It
    is applied as a per-level streaming reduction: every candidate popped
    at a level is first reduced against the canonical echelon of the
    candidates already seen there (re-ranked downward when the residual's
    rank dropped, discarded when zero).  Streaming preserves the batch
    behavior's spans but lets the early-out on exhausted multiplicity skip
    the reduction of candidates that are never needed.
    """
    if stats is None:
        stats = {}
    stats.setdefault("reduction_seconds", 0.0)
    stats.setdefault("candidates", 0)
    stats.setdefault("demotions", 0)
    stats.setdefault("max_bits", 0)
    n = a.shape[0]
    lbar = genset.max_rank
    remaining = multiplicity

    seed = None
    basis = ChainBasis({})
    s_cols: list[Vector] = []
    w_state = EchelonState(n)

    for level in range(lbar, 0, -1):
        reducer = CanonicalReducer(n) if use_reduction else None
        queue = genset.levels.get(level, [])
        while queue:
            v = queue.pop(0)
            stats["candidates"] += 1
            if reducer is not None:
                t0 = time.perf_counter()
                reduced = reducer.reduce(v)
                stats["reduction_seconds"] += time.perf_counter() - t0
                if reduced is None:
                    continue
                # No rank re-check: a residual whose rank dropped below the
                # level reduces to a zero v' in the probe at the same
                # matrix-vector cost and is demoted to its true rank there.
                v = reduced
            if seed is None:
                if level != lbar:
                    raise EliminationError("no generator of maximal rank")
                rank = factor_rank(fa, v, lbar)
                if rank < lbar:
                    genset.level(rank).append(v)
                    continue
                # first maximal-rank generator seeds the basis
                seed = v
                basis.levels[lbar] = [seed]
                remaining -= lbar
                if remaining < 0:
                    raise EliminationError("maximal rank exceeds the factor multiplicity")
                if remaining == 0:
                    return basis
                s_cols.append(seed)
                for _ in range(degree - 1):
                    s_cols.append(mat_vec(a, s_cols[-1]))
                w_head = seed
                for _ in range(lbar - 1):
                    w_head = mat_vec(fa, w_head)
                w_col = w_head
                for j in range(degree):
                    if j:
                        w_col = mat_vec(a, w_col)
                    if not w_state.insert(w_col).independent:
                        raise EliminationError("seed Krylov columns are dependent")
                continue
            v_prime = v
            for _ in range(level - 1):
                v_prime = mat_vec(fa, v_prime)
            probe = w_state.insert(v_prime, peek=True)
            # kappa * r = kappa * v - sum(x_i * S_i) for the same combination
            # the probe applied to W, so the pair (r', r) stays simultaneous.
            r_scaled = probe.kappa * v
            expansion = probe.expansion
            for i in range(w_state.n_inserted):
                c = expansion[i]
                if c != 0:
                    r_scaled = r_scaled + c * s_cols[i]
            if probe.independent:
                accepted = primitive_vector(r_scaled)
                accepted_prime = scale_to_match_primitive(
                    probe.scaled_residual, r_scaled, accepted
                )
                basis.levels.setdefault(level, []).append(accepted)
                stats["max_bits"] = max(stats["max_bits"], max_bit_length(accepted))
                remaining -= level
                if remaining < 0:
                    raise EliminationError("accepted ranks exceed the factor multiplicity")
                if remaining == 0:
                    return basis
                s_new, w_new = accepted, accepted_prime
                for j in range(degree):
                    if j:
                        s_new = mat_vec(a, s_new)
                        w_new = mat_vec(a, w_new)
                    s_cols.append(s_new)
                    if not w_state.insert(w_new).independent:
                        raise EliminationError("accepted residual Krylov columns are dependent")
            else:
                if level > 1 and not is_zero_vector(r_scaled):
                    demoted = primitive_vector(r_scaled)
                    new_rank = factor_rank(fa, demoted, level - 1)
                    stats["demotions"] += 1
                    stats["max_bits"] = max(stats["max_bits"], max_bit_length(demoted))
                    genset.level(new_rank).append(demoted)
        if seed is None and level == lbar:
            raise EliminationError("no generator of maximal rank")
        if level > 1:
            s_cols = [mat_vec(fa, col) for col in s_cols]

    raise EliminationError("generating set exhausted with multiplicity remaining")
