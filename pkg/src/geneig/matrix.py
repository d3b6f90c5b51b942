"""Dense exact-rational matrices and vectors on numpy object arrays.

Entries are Python ints or Fractions held in ``dtype=object`` arrays: numpy
then runs the elementwise loops in C while the arithmetic itself stays
arbitrary precision and exact.  Floats are rejected at the boundary.

Matrix-vector and matrix-matrix products are counted in a module-level
counter so pipelines and the benchmark harness can report operation counts.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .poly import PolyQ
from .rationals import Rational, as_rational, bit_length, lcm_int

Matrix = np.ndarray  # 2-d, dtype=object
Vector = np.ndarray  # 1-d, dtype=object


class OpCounters:
    """Running totals of exact matrix products performed."""

    def __init__(self):
        self._lock = threading.Lock()
        self.mat_vec = 0
        self.mat_mat = 0

    def add_mat_vec(self, k: int = 1):
        with self._lock:
            self.mat_vec += k

    def add_mat_mat(self, k: int = 1):
        with self._lock:
            self.mat_mat += k

    def reset(self):
        with self._lock:
            self.mat_vec = 0
            self.mat_mat = 0

    def snapshot(self) -> dict:
        with self._lock:
            return {"mat_vec": self.mat_vec, "mat_mat": self.mat_mat}


counters = OpCounters()


# -- construction and validation ----------------------------------------


def as_vector(entries) -> Vector:
    """Validate and convert an iterable of exact scalars to a vector."""
    if isinstance(entries, np.ndarray) and entries.dtype == object and entries.ndim == 1:
        return entries
    data = [as_rational(e) for e in entries]
    v = np.empty(len(data), dtype=object)
    v[:] = data
    return v


def as_matrix(rows) -> Matrix:
    """Validate and convert rows of exact scalars to a matrix.

    Accepts a sequence of rows or an object ndarray; every entry must be an
    int, Fraction, or "p/q" string.  Ragged rows and floats are errors.
    """
    if isinstance(rows, np.ndarray) and rows.dtype == object and rows.ndim == 2:
        return rows
    data = [[as_rational(e) for e in row] for row in rows]
    if not data:
        return np.empty((0, 0), dtype=object)
    width = len(data[0])
    for i, row in enumerate(data):
        if len(row) != width:
            raise ValueError(f"ragged matrix: row 0 has {width} entries, row {i} has {len(row)}")
    m = np.empty((len(data), width), dtype=object)
    for i, row in enumerate(data):
        m[i, :] = row
    return m


def check_square(a: Matrix) -> int:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a.shape[0]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def zeros(rows: int, cols: int) -> Matrix:
    m = np.empty((rows, cols), dtype=object)
    m[:] = 0
    return m


def zero_vector(n: int) -> Vector:
    v = np.empty(n, dtype=object)
    v[:] = 0
    return v


def basis_vector(n: int, j: int) -> Vector:
    v = zero_vector(n)
    v[j] = 1
    return v


def is_zero_vector(v: Vector) -> bool:
    return all(e == 0 for e in v)


def is_zero_matrix(a: Matrix) -> bool:
    return all(e == 0 for e in a.flat)


def vectors_equal(u: Vector, v: Vector) -> bool:
    return u.shape == v.shape and all(a == b for a, b in zip(u, v))


def matrices_equal(a: Matrix, b: Matrix) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def max_bit_length(a) -> int:
    """Largest numerator/denominator bit length over all entries."""
    return max((bit_length(e) for e in np.asarray(a).flat), default=0)


# -- products ------------------------------------------------------------


def mat_vec(a: Matrix, v: Vector) -> Vector:
    """Exact matrix-vector product."""
    if a.shape[1] != v.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {v.shape}")
    counters.add_mat_vec()
    if a.shape[1] == 0:
        return zero_vector(a.shape[0])
    return a.dot(v)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Exact matrix-matrix product."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    counters.add_mat_mat()
    if a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return a.dot(b)


def mat_poly_apply_vec(g: PolyQ, a: Matrix, v: Vector) -> Vector:
    """g(A)v by Horner's rule: deg(g) matrix-vector products, no g(A)."""
    n = check_square(a)
    if v.shape[0] != n:
        raise ValueError(f"dimension mismatch: {a.shape} @ {v.shape}")
    if g.is_zero():
        return zero_vector(n)
    acc = g.coeffs[-1] * v
    for k in range(g.degree - 1, -1, -1):
        acc = mat_vec(a, acc)
        c = g.coeffs[k]
        if c != 0:
            acc = acc + c * v
    return acc


def mat_poly_eval(g: PolyQ, a: Matrix) -> Matrix:
    """g(A) by the Paterson-Stockmeyer blocked scheme.

    Splits g into ceil((deg+1)/s) blocks of width s = ceil(sqrt(deg+1)), so
    only O(sqrt(deg)) matrix-matrix products are needed: s-1 to form the
    power table A^2..A^s and one per Horner step over A^s.
    """
    n = check_square(a)
    if g.is_zero():
        return zeros(n, n)
    if g.degree == 0:
        return g.coeffs[0] * identity(n)
    s = max(1, isqrt(g.degree + 1))
    if s * s < g.degree + 1:
        s += 1
    powers = [identity(n), a]
    for _ in range(2, s + 1):
        powers.append(mat_mul(powers[-1], a))

    def block(i: int) -> Matrix:
        out = zeros(n, n)
        for j in range(s):
            c = g[i * s + j]
            if c != 0:
                out = out + c * powers[j]
        return out

    n_blocks = (g.degree + s) // s
    acc = block(n_blocks - 1)
    for i in range(n_blocks - 2, -1, -1):
        acc = mat_mul(acc, powers[s]) + block(i)
    return acc


# -- characteristic polynomial -------------------------------------------


def char_poly(a: Matrix) -> PolyQ:
    """Monic characteristic polynomial det(x*I - A), exact.

    Uses the division-free Berkowitz recurrence over the integers after
    clearing denominators, so no rational arithmetic happens in the O(n^4)
    inner loops.
    """
    n = check_square(a)
    if n == 0:
        return PolyQ.one()
    scale = 1
    for e in a.flat:
        if isinstance(e, Fraction):
            scale = lcm_int(scale, e.denominator)
    if scale == 1:
        b = a
    else:
        b = np.empty((n, n), dtype=object)
        for i in range(n):
            b[i, :] = [int(e * scale) for e in a[i, :]]

    # p holds the coefficients of the leading r x r block, highest degree
    # first; each step convolves with the Toeplitz column of the next block.
    p = np.array([1, -b[0, 0]], dtype=object)
    for r in range(1, n):
        row = b[r, :r]
        col = b[:r, r]
        corner = b[r, r]
        toeplitz = [1, -corner]
        u = col
        for _ in range(r - 1):
            toeplitz.append(-row.dot(u))
            u = b[:r, :r].dot(u)
        toeplitz.append(-row.dot(u))
        p = np.convolve(np.array(toeplitz, dtype=object), p)[: r + 2]

    coeffs = list(reversed(p.tolist()))  # ascending in x
    if scale == 1:
        return PolyQ(coeffs)
    # char_poly(s*A)(s*x) = s^n * char_poly(A)(x)
    return PolyQ([Fraction(c, scale ** (n - k)) for k, c in enumerate(coeffs)])


# -- vector normalization --------------------------------------------------


def primitive_vector(v: Vector) -> Vector:
    """Scale to a primitive integer vector: clear denominators, divide by
    the content, and make the first nonzero entry positive.

    The zero vector is returned unchanged.  Scaling a generator is harmless
    downstream because only its Krylov span matters, and integer entries
    keep later eliminations fast.
    """
    entries = v.tolist()
    if all(type(e) is int for e in entries):
        return _primitive_int(entries)
    den = 1
    for e in entries:
        if isinstance(e, Fraction):
            den = lcm_int(den, e.denominator)
    return _primitive_int([int(e * den) for e in entries])


def _primitive_int(ints: list) -> Vector:
    content = 0
    first_sign = 0
    for value in ints:
        if value:
            if first_sign == 0:
                first_sign = 1 if value > 0 else -1
            if content != 1:
                content = gcd(content, value)
    out = np.empty(len(ints), dtype=object)
    if content == 0:
        out[:] = 0
        return out
    if first_sign < 0:
        content = -content
    if content == 1:
        out[:] = ints
    else:
        out[:] = [value // content for value in ints]
    return out


def scale_to_match_primitive(raw: Vector, reference_raw: Vector, reference_prim: Vector) -> Vector:
    """Apply to *raw* the exact scaling that turned *reference_raw* into
    *reference_prim* (used to keep simultaneously-reduced residual pairs
    consistent)."""
    idx = next((i for i, e in enumerate(reference_prim) if e != 0), None)
    if idx is None:
        return zero_vector(raw.shape[0])
    factor = Fraction(reference_prim[idx]) / Fraction(reference_raw[idx])
    out = np.empty(raw.shape[0], dtype=object)
    out[:] = [_normalize_entry(e * factor) for e in raw]
    return out


def _normalize_entry(e) -> Rational:
    if isinstance(e, Fraction) and e.denominator == 1:
        return int(e)
    return e
