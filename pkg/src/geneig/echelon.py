"""Incremental column echelon state and exact rank computations.

``EchelonState`` answers membership questions "is v in the span of what was
inserted so far?" and records, for every inserted vector, the reduction
coefficients relative to the *original* inserted columns.  That last part is
what makes simultaneous column reduction possible: the identical coefficient
combination computed against one column family can be replayed against a
companion family.

Internally columns are kept as primitive integer vectors and reductions use
fraction-free two-term updates with content stripping, augmented with an
integer expansion block that tracks how each stored column decomposes over
the inserted originals.  The spec-level view (pivot-1 columns, reduced at
earlier pivot rows) is exposed as ``basis_columns``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .matrix import (
    Matrix,
    Vector,
    is_zero_vector,
    primitive_vector,
    zero_vector,
)
from .rationals import Rational, lcm_int, normalize


def _as_int_with_scale(v: Vector) -> tuple[np.ndarray, int]:
    """Clear denominators: returns (d*v as int array, d)."""
    den = 1
    for e in v:
        if isinstance(e, Fraction):
            den = lcm_int(den, e.denominator)
    out = np.empty(v.shape[0], dtype=object)
    if den == 1:
        out[:] = [int(e) if isinstance(e, Fraction) else e for e in v]
    else:
        out[:] = [int(e * den) for e in v]
    return out, den


def _strip_content(vec: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Divide the joint (vector, expansion) column by its integer content."""
    g = 0
    for e in vec:
        g = gcd(g, e)
        if g == 1:
            return vec, x
    for e in x:
        g = gcd(g, e)
        if g == 1:
            return vec, x
    if g == 0 or g == 1:
        return vec, x
    return vec // g, x // g


@dataclass
class InsertResult:
    """Outcome of reducing one vector against the state."""

    independent: bool
    residual: Vector            # primitive integer normalization of the residual
    scaled_residual: np.ndarray  # kappa * (exact residual), integer entries
    kappa: int                   # positive or negative integer scale, never 0
    coeffs: list[Rational]       # reduction coefficients over inserted originals
    expansion: np.ndarray        # integer combination: kappa*r = kappa*v + expansion @ originals
    pivot_row: int | None


class EchelonState:
    """Reduced column echelon form built one vector at a time.

    Exposed invariants: every basis column has pivot entry 1, a column's
    pivot row is its first nonzero row, and later columns are zero at all
    earlier pivot rows.  Insertion order fixes everything, so runs are
    deterministic.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.n_inserted = 0
        self._vecs: list[np.ndarray] = []   # stored integer columns
        self._xs: list[np.ndarray] = []     # expansion over originals
        self._pivot_rows: list[int] = []
        self._pivots: list[int] = []

    def __len__(self) -> int:
        return len(self._vecs)

    @property
    def rank(self) -> int:
        return len(self._vecs)

    @property
    def pivot_rows(self) -> list[int]:
        return list(self._pivot_rows)

    @property
    def basis_columns(self) -> Matrix:
        """Pivot-1 view of the stored columns (n x rank)."""
        out = np.empty((self.dim, len(self._vecs)), dtype=object)
        for k, (vec, piv) in enumerate(zip(self._vecs, self._pivots)):
            out[:, k] = [normalize(Fraction(e, piv)) for e in vec]
        return out

    def insert(self, v: Vector, peek: bool = False) -> InsertResult:
        """Reduce *v* against the state; append the residual unless zero.

        With ``peek=True`` the state is left untouched (membership test
        only).  Either way the vector counts as "inserted" for coefficient
        indexing only when actually committed.
        """
        if v.shape[0] != self.dim:
            raise ValueError(f"dimension mismatch: state rows {self.dim}, vector {v.shape[0]}")
        m = self.n_inserted
        vec, den = _as_int_with_scale(v)
        x = np.zeros(m + 1, dtype=object)
        x[m] = den
        for col_vec, col_x, prow, piv in zip(self._vecs, self._xs, self._pivot_rows, self._pivots):
            phi = vec[prow]
            if phi == 0:
                continue
            vec = piv * vec - phi * col_vec
            x = piv * x
            k = col_x.shape[0]
            if k:
                x[:k] = x[:k] - phi * col_x
            vec, x = _strip_content(vec, x)
        kappa = int(x[m])
        inv_kappa = Fraction(1, kappa)
        coeffs = [normalize(-x[i] * inv_kappa) for i in range(m)]
        expansion = x[:m]
        pivot_row = next((i for i, e in enumerate(vec) if e != 0), None)
        if pivot_row is None:
            result = InsertResult(False, zero_vector(self.dim), vec, kappa, coeffs, expansion, None)
            if not peek:
                self.n_inserted += 1
            return result
        residual = primitive_vector(vec)
        result = InsertResult(True, residual, vec, kappa, coeffs, expansion, pivot_row)
        if not peek:
            self._vecs.append(vec)
            self._xs.append(x)
            self._pivot_rows.append(pivot_row)
            self._pivots.append(int(vec[pivot_row]))
            self.n_inserted += 1
        return result

    def contains(self, v: Vector) -> bool:
        return not self.insert(v, peek=True).independent


def echelon_insert(state: EchelonState, v: Vector) -> tuple[EchelonState, Vector, list[Rational]]:
    """Functional wrapper over ``EchelonState.insert``.

    Returns the (mutated) state, the primitive-normalized residual, and
    the reduction coefficients over the previously inserted vectors, so
    that residual = v - sum(coeffs[i] * inserted[i]) up to the primitive
    rescaling of the residual.
    """
    result = state.insert(v)
    return state, result.residual, result.coeffs


def simultaneous_reduce(
    w_state: EchelonState,
    s_cols: Matrix,
    v_prime: Vector,
    v: Vector,
    return_coeffs: bool = False,
):
    """Reduce v' against W and replay the identical combination on S.

    ``s_cols`` must hold exactly one column per vector ever inserted into
    ``w_state``, in insertion order.  Returns the raw residual pair
    (r', r) with r' = v' - W@c and r = v - S@c for the same coefficient
    vector c; r' is zero exactly when v' lies in the span of W.
    """
    if s_cols.shape[1] != w_state.n_inserted:
        raise ValueError(
            f"companion column count {s_cols.shape[1]} != "
            f"{w_state.n_inserted} recorded eliminations"
        )
    if s_cols.shape[0] != v.shape[0]:
        raise ValueError("companion row count does not match v")
    probe = w_state.insert(v_prime, peek=True)
    inv_kappa = Fraction(1, probe.kappa)
    r_prime = np.empty(v_prime.shape[0], dtype=object)
    r_prime[:] = [normalize(e * inv_kappa) for e in probe.scaled_residual]
    r = v.copy()
    for i, c in enumerate(probe.coeffs):
        if c != 0:
            r = r - c * s_cols[:, i]
    r = np.array([normalize(e) if isinstance(e, Fraction) else e for e in r], dtype=object)
    if return_coeffs:
        return r_prime, r, probe.coeffs
    return r_prime, r


# -- independent exact rank (Bareiss) -------------------------------------


def exact_rank(a: Matrix) -> int:
    """Rank over the rationals by fraction-free Bareiss elimination.

    Self-contained on purpose: acceptance checks use this as an oracle
    against the echelon machinery above, so the two must not share code.
    """
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return 0
    work = []
    for i in range(rows):
        den = 1
        for e in a[i, :]:
            if isinstance(e, Fraction):
                den = lcm_int(den, e.denominator)
        work.append([int(e * den) if den != 1 or isinstance(e, Fraction) else e for e in a[i, :]])
    rank = 0
    prev = 1
    col = 0
    while rank < rows and col < cols:
        pivot_at = next((i for i in range(rank, rows) if work[i][col] != 0), None)
        if pivot_at is None:
            col += 1
            continue
        work[rank], work[pivot_at] = work[pivot_at], work[rank]
        piv = work[rank][col]
        for i in range(rank + 1, rows):
            f = work[i][col]
            row_i, row_p = work[i], work[rank]
            for j in range(col, cols):
                row_i[j] = (piv * row_i[j] - f * row_p[j]) // prev
        prev = piv
        rank += 1
        col += 1
    return rank


def kernel_dimension(a: Matrix) -> int:
    return a.shape[1] - exact_rank(a)


# -- modular rank (certificates only) --------------------------------------

# Full rank modulo a prime certifies full rank over the rationals (any
# nonzero minor mod p lifts); a deficient modular rank is only an upper
# bound, in which case callers fall back to exact_rank or retry the prime.

CERTIFICATE_PRIMES = (
    4000037, 4000079, 4000081, 4000099, 4000117, 4000127, 4000157, 4000159,
    4000187, 4000211, 4000223, 4000241, 4000253, 4000277, 4000293, 4000343,
)


class BadPrime(ValueError):
    """Raised when a denominator vanishes modulo the chosen prime."""


def matrix_mod_p(a: Matrix, p: int) -> np.ndarray:
    out = np.empty(a.shape, dtype=np.int64)
    flat_in = a.flat
    flat_out = out.reshape(-1)
    for k, e in enumerate(flat_in):
        if isinstance(e, Fraction):
            den = e.denominator % p
            if den == 0:
                raise BadPrime(f"denominator divisible by {p}")
            flat_out[k] = (e.numerator % p) * pow(den, -1, p) % p
        else:
            flat_out[k] = e % p
    return out


def rank_mod_p(a: np.ndarray, p: int) -> int:
    """Rank of an int64 matrix over F_p (rows reduced in place on a copy)."""
    m = (a % p).astype(np.int64).copy()
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        pivot_at = None
        for i in range(rank, rows):
            if m[i, col] % p:
                pivot_at = i
                break
        if pivot_at is None:
            continue
        if pivot_at != rank:
            m[[rank, pivot_at]] = m[[pivot_at, rank]]
        inv = pow(int(m[rank, col]), -1, p)
        m[rank, col:] = (m[rank, col:] * inv) % p
        for i in range(rank + 1, rows):
            f = int(m[i, col])
            if f:
                m[i, col:] = (m[i, col:] - f * m[rank, col:]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def poly_power_kernel_dim_mod_p(f_coeffs: list[Rational], power: int, a_mod: np.ndarray, p: int) -> int:
    """dim ker (f(A)^power mod p) for an int64 reduced matrix."""
    n = a_mod.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    coeffs = []
    for c in f_coeffs:
        if isinstance(c, Fraction):
            den = c.denominator % p
            if den == 0:
                raise BadPrime(f"denominator divisible by {p}")
            coeffs.append((c.numerator % p) * pow(den, -1, p) % p)
        else:
            coeffs.append(c % p)
    np.fill_diagonal(acc, coeffs[-1])
    for k in range(len(coeffs) - 2, -1, -1):
        acc = acc.dot(a_mod) % p
        if coeffs[k]:
            acc[np.diag_indices(n)] = (acc[np.diag_indices(n)] + coeffs[k]) % p
    fa = acc
    result = fa
    for _ in range(power - 1):
        result = result.dot(fa) % p
    return n - rank_mod_p(result, p)
