"""Shared fixtures and test-local oracles.

The oracles here (naive convolution products, rational Gaussian
elimination, kernel dimensions) are deliberately independent of the
library's own elimination machinery so that golden values can be derived
and cross-checked without trusting the code under test.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from geneig import PolyQ, as_matrix

F1 = PolyQ([5, 1, 1])   # x^2 + x + 5
F2 = PolyQ([4, 1, 1])   # x^2 + x + 4

# 10x10 integer matrix with characteristic polynomial (x^2+x+5)^4 (x^2+x+4);
# the golden eigenstructure asserted across the suite belongs to it.
SAMPLE10_ROWS = [
    [5, -5, 6, -9, 5, 0, 0, -4, 5, -6],
    [-14, 11, -9, 39, -2, -2, 6, 16, -10, 12],
    [-5, 5, -6, 9, -5, 1, 0, 5, -5, 5],
    [5, 2, 1, 7, 7, -4, 6, 3, 5, 2],
    [-5, -9, 9, -9, -1, 3, -5, -7, -5, -9],
    [5, 2, -4, -2, 5, -5, 5, -1, 5, 2],
    [5, 9, -14, 0, -3, -4, 3, 4, 5, 9],
    [-5, -9, 4, -23, -8, 7, -11, -11, -5, -9],
    [0, 8, -6, 16, 2, -4, 6, 7, 0, 9],
    [4, -7, 4, -25, -3, 3, -6, -11, 0, -8],
]


@pytest.fixture(scope="session")
def sample10():
    return as_matrix(SAMPLE10_ROWS)


@pytest.fixture(scope="session")
def companion6():
    """Companion matrix of (x^2+x+5)^3: one length-3 chain per root."""
    from geneig import companion_matrix

    return companion_matrix(F1**3)


# -- independent oracles -----------------------------------------------------


def naive_poly_mul(a: list, b: list) -> list:
    """Coefficient convolution, ascending degree."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    while out and out[-1] == 0:
        out.pop()
    return out


def naive_mat_vec(a, v) -> list:
    rows, cols = a.shape
    return [sum(a[i, j] * v[j] for j in range(cols)) for i in range(rows)]


def naive_mat_mul(a, b):
    rows, inner = a.shape
    cols = b.shape[1]
    out = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        for j in range(cols):
            out[i, j] = sum(a[i, k] * b[k, j] for k in range(inner))
    return out


def rational_rank(a) -> int:
    """Row reduction over Fractions; independent of the library's Bareiss."""
    rows = [[Fraction(x) for x in a[i, :]] for i in range(a.shape[0])]
    cols = a.shape[1]
    rank = 0
    for col in range(cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def kernel_dim(a) -> int:
    return a.shape[1] - rational_rank(a)


def chain_length_multiset_from_kernels(a, alpha) -> tuple:
    """Chain lengths at a rational eigenvalue via kernel dimensions of
    (A - alpha*I)^k: the count of chains of length exactly l is
    (d_l - d_{l-1}) - (d_{l+1} - d_l) with d_k = dim ker (A - alpha I)^k."""
    n = a.shape[0]
    shifted = a.copy()
    for i in range(n):
        shifted[i, i] = shifted[i, i] - alpha
    dims = [0]
    power = np.array([[1 if i == j else 0 for j in range(n)] for i in range(n)], dtype=object)
    while True:
        power = naive_mat_mul(power, shifted)
        dims.append(kernel_dim(power))
        if len(dims) > 1 and dims[-1] == dims[-2]:
            break
    new_per_rank = [dims[k] - dims[k - 1] for k in range(1, len(dims))]
    lengths = []
    for l in range(1, len(new_per_rank) + 1):
        here = new_per_rank[l - 1]
        above = new_per_rank[l] if l < len(new_per_rank) else 0
        lengths.extend([l] * (here - above))
    return tuple(sorted(lengths))
