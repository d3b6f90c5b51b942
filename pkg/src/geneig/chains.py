"""Symbolic Jordan chains: vectors of polynomials in the eigenvalue symbol.

For an irreducible factor f of degree d, one chain represents the d
conjugate chains at once: each chain vector is an element of Q[x]^n with
entry degrees below d, where the symbol x stands for any root of f.  The
machinery that converts a kernel vector into such chains is the tower of
powers of the difference quotient (f(mu) - f(x)) / (mu - x), with
coefficients reduced mod f(x); substituting mu -> A turns a rank-l vector
into a chain of length l, using matrix-vector products only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix import Matrix, Vector, is_zero_vector, mat_vec, vectors_equal, zero_vector
from .poly import PolyQ, poly_divrem
from .krylov import ChainBasis, factor_rank


@dataclass(frozen=True)
class PolyVector:
    """Vector in Q[x]^n stored as d coefficient vectors (x^0 ... x^(d-1)).

    Structure-of-arrays on purpose: every operation applied to these values
    is a matrix acting on each coefficient vector separately.
    """

    coeff_vectors: tuple[Vector, ...]

    @property
    def order(self) -> int:
        return self.coeff_vectors[0].shape[0]

    @property
    def entry_degree_bound(self) -> int:
        return len(self.coeff_vectors)

    def is_zero(self) -> bool:
        return all(is_zero_vector(v) for v in self.coeff_vectors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVector):
            return NotImplemented
        return len(self.coeff_vectors) == len(other.coeff_vectors) and all(
            vectors_equal(u, v) for u, v in zip(self.coeff_vectors, other.coeff_vectors)
        )

    def entry(self, i: int) -> PolyQ:
        """Entry i as a polynomial in the eigenvalue symbol."""
        return PolyQ([v[i] for v in self.coeff_vectors])


def poly_vector(coeff_vectors) -> PolyVector:
    return PolyVector(tuple(coeff_vectors))


@dataclass(frozen=True)
class JordanChain:
    """A chain p^(l), ..., p^(1): (A - x*I) maps each vector to the next,
    and annihilates the last."""

    length: int
    vectors: tuple[PolyVector, ...]  # p^(length) first

    def top(self) -> PolyVector:
        return self.vectors[0]

    def eigenvector(self) -> PolyVector:
        return self.vectors[-1]


class DifferenceQuotientPowers:
    """Powers of (f(mu) - f(x)) / (mu - x), reduced coefficient-wise mod f.

    ``mu_coeffs(k)`` returns the k-th power as a list of ascending-degree
    mu-coefficients, each a PolyQ in x of degree < d.  The k-th power is
    monic of mu-degree k*(d-1).
    """

    def __init__(self, f: PolyQ, max_power: int):
        if not f.is_monic():
            raise ValueError("factor must be monic")
        if f.degree < 1 or max_power < 1:
            raise ValueError("need deg f >= 1 and max_power >= 1")
        self.f = f
        self.degree = f.degree
        d = f.degree
        # synthetic division: coefficient of mu^j is f[j+1] + f[j+2] x + ...
        base = [PolyQ(f.coeffs[j + 1 :]) for j in range(d)]
        levels = [base]
        for _ in range(max_power - 1):
            levels.append(self._multiply(levels[-1], base))
        self.levels = levels
        for k, level in enumerate(levels, start=1):
            if len(level) - 1 != k * (d - 1) or level[-1] != PolyQ.one():
                raise ArithmeticError("difference quotient power lost monicity")

    @property
    def max_power(self) -> int:
        return len(self.levels)

    def mu_coeffs(self, k: int) -> list[PolyQ]:
        return self.levels[k - 1]

    def _multiply(self, left: list[PolyQ], right: list[PolyQ]) -> list[PolyQ]:
        out = [PolyQ.zero() for _ in range(len(left) + len(right) - 1)]
        for i, a in enumerate(left):
            if a.is_zero():
                continue
            for j, b in enumerate(right):
                out[i + j] = out[i + j] + a * b
        return [poly_divrem(c, self.f)[1] for c in out]


def evaluate_power(tower: DifferenceQuotientPowers, k: int, a: Matrix, u: Vector) -> PolyVector:
    """Substitute mu -> A in the k-th power and apply to u.

    Accumulates A^j u incrementally, so the cost is mu-degree many
    matrix-vector products regardless of d.
    """
    d = tower.degree
    n = u.shape[0]
    acc = [zero_vector(n) for _ in range(d)]
    t = u
    for j, h in enumerate(tower.mu_coeffs(k)):
        if j:
            t = mat_vec(a, t)
        for power in range(h.degree + 1):
            c = h.coeffs[power]
            if c != 0:
                acc[power] = acc[power] + c * t
    return poly_vector(acc)


def chain_from_seed(
    a: Matrix,
    fa: Matrix,
    tower: DifferenceQuotientPowers,
    seed: Vector,
    length: int,
) -> JordanChain:
    """Jordan chain of the given length from a seed of exactly that rank."""
    try:
        actual = factor_rank(fa, seed, length)
    except ValueError:
        actual = length + 1
    if actual != length:
        raise ValueError(f"seed has rank {actual}, expected {length}")
    vectors = []
    u = seed
    for k in range(length, 1, -1):
        vectors.append(evaluate_power(tower, k, a, u))
        u = mat_vec(fa, u)
    vectors.append(evaluate_power(tower, 1, a, u))
    return JordanChain(length=length, vectors=tuple(vectors))


def jordan_chains(a: Matrix, fa: Matrix, f: PolyQ, basis: ChainBasis) -> list[JordanChain]:
    """One chain per seed, ranks descending then insertion order."""
    seeds = basis.seeds()
    if not seeds:
        return []
    tower = DifferenceQuotientPowers(f, max(rank for rank, _ in seeds))
    return [chain_from_seed(a, fa, tower, seed, rank) for rank, seed in seeds]


# -- symbolic verification -------------------------------------------------


def apply_matrix_minus_symbol(a: Matrix, f: PolyQ, p: PolyVector) -> PolyVector:
    """(A - x*I) p, exactly, with entries reduced mod f.

    Multiplying by x shifts the coefficient vectors up one slot; the
    overflow at x^d folds back through x^d = -(f_0 + ... + f_{d-1} x^{d-1}).
    """
    d = f.degree
    if len(p.coeff_vectors) != d:
        raise ValueError("coefficient count does not match deg f")
    top = p.coeff_vectors[d - 1]
    out = []
    for k in range(d):
        w = mat_vec(a, p.coeff_vectors[k])
        if k >= 1:
            w = w - p.coeff_vectors[k - 1]
        c = f.coeffs[k]
        if c != 0:
            w = w + c * top
        out.append(w)
    return poly_vector(out)


@dataclass
class ChainVerification:
    """Exact identity checks for one chain; failures are entries, not errors."""

    checks: list[tuple[str, bool]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def __str__(self):
        return "\n".join(f"{'ok  ' if ok else 'FAIL'} {label}" for label, ok in self.checks)


def verify_chain(a: Matrix, f: PolyQ, chain: JordanChain) -> ChainVerification:
    """Check the chain identities symbolically in Q[x]/(f).

    (A - x*I) p^(k) = p^(k-1) for k = l..2, (A - x*I) p^(1) = 0, and
    p^(1) != 0; together these certify (A - x*I)^(k-1) p^(k) != 0 for all k
    through the chain recurrence.
    """
    checks: list[tuple[str, bool]] = []
    vectors = chain.vectors
    length = chain.length
    for idx in range(length - 1):
        k = length - idx
        image = apply_matrix_minus_symbol(a, f, vectors[idx])
        checks.append((f"(A - x*I) p^({k}) == p^({k - 1})", image == vectors[idx + 1]))
    image = apply_matrix_minus_symbol(a, f, vectors[-1])
    checks.append(("(A - x*I) p^(1) == 0", image.is_zero()))
    checks.append(("p^(1) != 0", not vectors[-1].is_zero()))
    return ChainVerification(checks)
