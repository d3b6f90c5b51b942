"""Deterministic test-matrix generator: block companion structure with a
prescribed chain-length profile, then similarity scrambling by elementary
row/column operations.

The scrambled matrix has exactly the Jordan structure written into the
spec, which makes these matrices self-certifying test inputs: the pipeline
must recover the chain-length multisets the generator planted.

Randomness comes from splitmix64 with plain modular draws, fixed here so
that a seed reproduces the same matrix anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix import Matrix, check_square, identity, zeros
from .poly import PolyQ

_MASK = (1 << 64) - 1


class SplitMix64:
    """splitmix64: z += 0x9E3779B97F4A7C15; mix with xor-shift-multiply."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform-enough draw in [0, bound): plain modulo, part of the
        documented generator contract so runs are reproducible."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def int_range(self, low: int, high: int) -> int:
        """Draw in [low, high] inclusive."""
        return low + self.below(high - low + 1)


def companion_matrix(f: PolyQ) -> Matrix:
    """Companion matrix of a monic polynomial: ones on the subdiagonal,
    negated coefficients in the last column."""
    if not f.is_monic() or f.degree < 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    d = f.degree
    c = zeros(d, d)
    for i in range(d - 1):
        c[i + 1, i] = 1
    for i in range(d):
        c[i, d - 1] = -f.coeffs[i]
    return c


@dataclass(frozen=True)
class BlockSpec:
    """Per factor: the monic polynomial and the chain lengths to plant."""

    blocks: tuple[tuple[PolyQ, tuple[int, ...]], ...]

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("empty block spec")
        for f, lengths in self.blocks:
            if not f.is_monic() or f.degree < 1:
                raise ValueError(f"block polynomial must be monic of degree >= 1: {f}")
            if not lengths or any(c < 1 for c in lengths):
                raise ValueError("chain lengths must be positive")

    @property
    def order(self) -> int:
        return sum(f.degree * sum(lengths) for f, lengths in self.blocks)

    def chain_multisets(self) -> dict[tuple, tuple[int, ...]]:
        """factor coeffs -> sorted chain-length multiset."""
        return {f.coeffs: tuple(sorted(lengths)) for f, lengths in self.blocks}


def block_spec(blocks) -> BlockSpec:
    return BlockSpec(tuple((f, tuple(lengths)) for f, lengths in blocks))


def block_matrix(spec: BlockSpec) -> Matrix:
    """Block diagonal over factors; a chain of length c contributes a
    c x c grid of companion blocks with identity blocks on the
    superdiagonal, so its minimal polynomial is f^c with one chain per
    root."""
    n = spec.order
    a = zeros(n, n)
    offset = 0
    for f, lengths in spec.blocks:
        d = f.degree
        comp = companion_matrix(f)
        for c in lengths:
            for k in range(c):
                r = offset + k * d
                a[r : r + d, r : r + d] = comp
                if k + 1 < c:
                    for i in range(d):
                        a[r + i, r + d + i] = 1
            offset += c * d
    return a


def scramble(a: Matrix, seed: int, steps: int | None = None, coeff_bound: int = 2) -> Matrix:
    """Similarity transform by a product of random elementary operations.

    Each step picks i != j and a nonzero integer |m| <= coeff_bound, adds
    m times row i to row j and subtracts m times column j from column i,
    which conjugates by the elementary matrix and therefore preserves the
    characteristic polynomial and the whole Jordan structure.  The default
    step count 4n densifies block matrices while keeping entries modest.
    """
    n = check_square(a)
    if steps is None:
        steps = 4 * n
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be >= 1")
    rng = SplitMix64(seed)
    out = a.copy()
    if n < 2:
        return out
    for _ in range(steps):
        i = rng.below(n)
        j = rng.below(n - 1)
        if j >= i:
            j += 1
        m = rng.int_range(1, coeff_bound)
        if rng.below(2):
            m = -m
        out[j, :] = out[j, :] + m * out[i, :]
        out[:, i] = out[:, i] - m * out[:, j]
    return out


def random_monic_poly(rng: SplitMix64, degree: int, coeff_bound: int = 5,
                      constant: int | None = None) -> PolyQ:
    """Monic integer polynomial with coefficients in [-coeff_bound, coeff_bound];
    the constant term can be pinned to fix the determinant magnitude."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    coeffs = [rng.int_range(-coeff_bound, coeff_bound) for _ in range(degree)]
    if constant is not None:
        coeffs[0] = constant
    elif coeffs[0] == 0:
        coeffs[0] = 1
    return PolyQ(coeffs + [1])


def random_irreducible_poly(rng: SplitMix64, degree: int, coeff_bound: int = 5,
                            constant: int | None = None, exclude=()) -> PolyQ:
    """Draw monic integer polynomials until one is irreducible over the
    rationals and distinct from everything in *exclude*."""
    from .poly import factor_rationals

    excluded = {f.coeffs for f in exclude}
    for _ in range(10_000):
        f = random_monic_poly(rng, degree, coeff_bound, constant)
        if f.coeffs in excluded:
            continue
        factors = factor_rationals(f).factors
        if len(factors) == 1 and factors[0][1] == 1:
            return f
    raise RuntimeError("failed to draw an irreducible polynomial")
