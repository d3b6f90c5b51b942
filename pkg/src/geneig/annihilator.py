"""Minimal annihilating polynomials and per-factor multiplicity bookkeeping.

For each basis vector e the monic generator pi_{A,e} of {h : h(A)e = 0} is
computed, together with, per irreducible factor f of the characteristic
polynomial: the exponent of f in pi_{A,e}, the cofactor g_e with
pi_{A,e} = f^l * g_e and gcd(f, g_e) = 1, the exponent lbar of f in the
minimal polynomial, and the multiplicity m of f in the characteristic
polynomial.

Two interchangeable construction strategies are provided.  The definitional
one runs a fresh Krylov elimination per basis vector.  The factored one
first certifies the minimal polynomial (product over its factors evaluates
to the zero matrix), then reads each vector's exponents off kernel ranks of
the factor matrices; it is much faster on large matrices and is verified
against the definitional path in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .echelon import (
    BadPrime,
    CERTIFICATE_PRIMES,
    EchelonState,
    matrix_mod_p,
    poly_power_kernel_dim_mod_p,
)
from .matrix import (
    Matrix,
    Vector,
    basis_vector,
    check_square,
    is_zero_matrix,
    is_zero_vector,
    mat_mul,
    mat_poly_apply_vec,
    mat_poly_eval,
    mat_vec,
)
from .poly import Factorization, PolyQ, factor_rationals, poly_lcm, poly_sort_key


def minimal_polynomial(a: Matrix, v: Vector, cap: PolyQ | None = None) -> PolyQ:
    """Monic minimal annihilating polynomial of *v* with respect to *a*.

    Inserts v, Av, A^2 v, ... into a fresh echelon state until the first
    linear dependence; the dependence coefficients are the polynomial.  A
    *cap* (any known annihilator of v, e.g. the minimal polynomial of A)
    bounds the iteration; if it turns out not to annihilate v this raises.
    """
    n = check_square(a)
    if v.shape[0] != n:
        raise ValueError("vector dimension does not match matrix")
    if is_zero_vector(v):
        return PolyQ.one()
    if cap is not None and cap.is_zero():
        raise ValueError("cap must be a nonzero polynomial")
    bound = cap.degree if cap is not None else n
    state = EchelonState(n)
    w = v
    for k in range(bound + 1):
        result = state.insert(w)
        if not result.independent:
            pi = PolyQ([-c for c in result.coeffs] + [1])
            if cap is not None and not pi.divides(cap):
                raise ValueError("cap does not annihilate the vector")
            return pi
        if k < bound:
            w = mat_vec(a, w)
    raise ValueError("cap does not annihilate the vector")


@dataclass
class FactorData:
    """Everything the pipeline needs about one irreducible factor."""

    poly: PolyQ
    char_multiplicity: int          # multiplicity in the characteristic polynomial
    min_multiplicity: int           # multiplicity in the minimal polynomial
    exponents: list[int]            # exponent in pi_{A,e} per basis vector
    cofactors: list[PolyQ | None]   # g_e where pi_{A,e} = f^l * g_e, None if l = 0

    @property
    def degree(self) -> int:
        return self.poly.degree


@dataclass
class AnnihilatorTable:
    """Minimal annihilating polynomials of a basis plus factor bookkeeping."""

    matrix: Matrix
    basis: list[Vector]
    min_polys: list[PolyQ]
    min_poly: PolyQ
    char_factorization: Factorization
    factors: list[FactorData]
    factor_matrices: dict[int, Matrix] = field(default_factory=dict)

    def char_poly(self) -> PolyQ:
        return self.char_factorization.expand()

    def factor_index(self, f: PolyQ) -> int:
        for i, fd in enumerate(self.factors):
            if fd.poly == f:
                return i
        raise ValueError(f"{f} is not an irreducible factor of the characteristic polynomial")

    def factor_data(self, f: PolyQ) -> FactorData:
        return self.factors[self.factor_index(f)]

    def factor_matrix(self, f: PolyQ) -> Matrix:
        """f(A), cached across pipeline stages."""
        idx = self.factor_index(f)
        if idx not in self.factor_matrices:
            self.factor_matrices[idx] = mat_poly_eval(self.factors[idx].poly, self.matrix)
        return self.factor_matrices[idx]


def _standard_basis(n: int) -> list[Vector]:
    return [basis_vector(n, j) for j in range(n)]


def _factor_exponent(pi: PolyQ, f: PolyQ) -> tuple[int, PolyQ]:
    """Largest l with f^l | pi, plus the cofactor pi / f^l."""
    count = 0
    current = pi
    while True:
        quotient, remainder = divmod(current, f)
        if not remainder.is_zero():
            return count, current
        count += 1
        current = quotient


def build_annihilator_table(
    a: Matrix,
    basis: list[Vector] | None = None,
    *,
    min_poly_method: str = "auto",
    char_method: str = "auto",
) -> AnnihilatorTable:
    """Construct the annihilator table for *a* over *basis*.

    ``min_poly_method``: "krylov" (one elimination per vector, the
    definition), "factored" (certified minimal polynomial + kernel ranks),
    or "auto" (krylov up to order 64).  ``char_method``: "berkowitz",
    "certified", or "auto"; both are exact, see ``certified_char_factorization``.
    """
    n = check_square(a)
    if n == 0:
        raise ValueError("empty matrix has no annihilator table")
    if basis is None:
        basis = _standard_basis(n)
    else:
        basis = list(basis)
        if len(basis) != n:
            raise ValueError(f"basis must have {n} vectors")
    if min_poly_method == "auto":
        min_poly_method = "krylov" if n <= 64 else "factored"
    if char_method == "auto":
        char_method = "berkowitz" if n <= 24 else "certified"

    if min_poly_method == "krylov":
        min_polys = [minimal_polynomial(a, e) for e in basis]
        min_poly = PolyQ.one()
        for pi in min_polys:
            min_poly = poly_lcm(min_poly, pi)
        factor_cache: dict = {}
    elif min_poly_method == "factored":
        min_polys, min_poly, factor_cache = _factored_min_polys(a, basis)
    else:
        raise ValueError(f"unknown min_poly_method: {min_poly_method!r}")

    min_factorization = factor_rationals(min_poly)

    if char_method == "berkowitz":
        from .matrix import char_poly as berkowitz_char_poly

        char_factorization = factor_rationals(berkowitz_char_poly(a))
    elif char_method == "certified":
        char_factorization = certified_char_factorization(a, min_factorization)
    else:
        raise ValueError(f"unknown char_method: {char_method!r}")

    if sum(f.degree * m for f, m in char_factorization) != n:
        raise ArithmeticError("characteristic factorization degrees do not sum to n")

    factors: list[FactorData] = []
    cache_by_index: dict[int, Matrix] = {}
    for idx, (f, m) in enumerate(char_factorization):
        lbar = min_factorization.multiplicity(f)
        if not 1 <= lbar <= m:
            raise ArithmeticError("minimal multiplicity must be between 1 and the characteristic one")
        exponents: list[int] = []
        cofactors: list[PolyQ | None] = []
        for pi in min_polys:
            exp, cofactor = _factor_exponent(pi, f)
            exponents.append(exp)
            cofactors.append(cofactor if exp > 0 else None)
        if max(exponents) != lbar:
            raise ArithmeticError("per-vector exponents are inconsistent with the minimal polynomial")
        factors.append(FactorData(f, m, lbar, exponents, cofactors))
        key = _poly_key(f)
        if key in factor_cache:
            cache_by_index[idx] = factor_cache[key]

    return AnnihilatorTable(
        matrix=a,
        basis=basis,
        min_polys=min_polys,
        min_poly=min_poly,
        char_factorization=char_factorization,
        factors=factors,
        factor_matrices=cache_by_index,
    )


def _poly_key(f: PolyQ):
    return f.coeffs


def _factored_min_polys(a: Matrix, basis: list[Vector]):
    """Minimal polynomials of all basis vectors via a certified pi_A.

    First a candidate pi_A is grown as an lcm of definitional minimal
    polynomials until the product of its factor matrices is the zero
    matrix (an exact certificate that the candidate is the true minimal
    polynomial).  Each remaining vector's exponents are then kernel ranks
    of the factor matrices applied to cofactor images, which takes only a
    handful of matrix-vector products per vector.
    """
    n = a.shape[0]
    candidate = PolyQ.one()
    processed: dict[int, PolyQ] = {}
    next_index = 0
    factor_cache: dict[tuple, Matrix] = {}
    for _ in range(n + 1):
        pi = minimal_polynomial(a, basis[next_index])
        processed[next_index] = pi
        candidate = pi.monic() if candidate == PolyQ.one() else poly_lcm(candidate, pi)
        if candidate.degree >= n:
            break
        factorization = factor_rationals(candidate)
        product = None
        for f, lbar in factorization:
            key = _poly_key(f)
            if key not in factor_cache:
                factor_cache[key] = mat_poly_eval(f, a)
            fa = factor_cache[key]
            for _ in range(lbar):
                product = fa if product is None else mat_mul(product, fa)
        witness = _first_nonzero_column(product, basis)
        if witness is None:
            break
        if witness in processed:
            raise ArithmeticError("annihilator certificate loop revisited a basis vector")
        next_index = witness
    else:
        raise ArithmeticError("failed to certify the minimal polynomial")

    min_poly = candidate.monic()
    factorization = factor_rationals(min_poly)
    factor_mats = []
    for f, lbar in factorization:
        key = _poly_key(f)
        if key not in factor_cache:
            factor_cache[key] = mat_poly_eval(f, a)
        cofactor = PolyQ.one()
        for g, k in factorization:
            if g != f:
                cofactor = cofactor * g**k
        factor_mats.append((f, lbar, factor_cache[key], cofactor))

    min_polys: list[PolyQ] = []
    for j, e in enumerate(basis):
        if j in processed:
            min_polys.append(processed[j])
            continue
        pi = PolyQ.one()
        for f, lbar, fa, cofactor in factor_mats:
            u = mat_poly_apply_vec(cofactor, a, e) if cofactor.degree > 0 else e
            exponent = 0
            while not is_zero_vector(u):
                u = mat_vec(fa, u)
                exponent += 1
                if exponent > lbar:
                    raise ArithmeticError("certified minimal polynomial failed on a basis vector")
            pi = pi * f**exponent
        min_polys.append(pi)
    return min_polys, min_poly, factor_cache


def _first_nonzero_column(product: Matrix | None, basis: list[Vector]) -> int | None:
    """Index of a basis vector not annihilated by the candidate product."""
    if product is None:
        return 0 if basis else None
    if is_zero_matrix(product):
        return None
    standard = all(_is_standard_basis_vector(e, j) for j, e in enumerate(basis))
    if standard:
        for j in range(product.shape[1]):
            if any(e != 0 for e in product[:, j]):
                return j
        return None
    for j, e in enumerate(basis):
        if not is_zero_vector(mat_vec(product, e)):
            return j
    return None


def _is_standard_basis_vector(e: Vector, j: int) -> bool:
    return e[j] == 1 and sum(1 for x in e if x != 0) == 1


def certified_char_factorization(a: Matrix, min_factorization: Factorization) -> Factorization:
    """Characteristic factorization from the minimal polynomial's factors.

    The characteristic polynomial shares exactly the irreducible factors
    of the minimal polynomial, each with multiplicity
    m_i = dim ker f_i(A)^{lbar_i} / deg f_i.  Kernel dimensions computed
    modulo a prime only bound m_i from above, but when the bounds satisfy
    sum(d_i * m_i) = n they are forced to be exact, which certifies the
    result; otherwise another prime is tried.  Falls back to the
    division-free Berkowitz route if every certificate prime fails.
    """
    n = a.shape[0]
    for p in CERTIFICATE_PRIMES:
        try:
            a_mod = matrix_mod_p(a, p)
            entries = []
            total = 0
            ok = True
            for f, lbar in min_factorization:
                dim = poly_power_kernel_dim_mod_p(list(f.coeffs), lbar, a_mod, p)
                if dim % f.degree != 0:
                    ok = False
                    break
                m = dim // f.degree
                if m < lbar:
                    ok = False
                    break
                entries.append((f, m))
                total += f.degree * m
            if ok and total == n:
                factors = tuple(sorted(entries, key=lambda item: poly_sort_key(item[0])))
                return Factorization(unit=1, factors=factors)
        except BadPrime:
            continue
    from .matrix import char_poly as berkowitz_char_poly

    return factor_rationals(berkowitz_char_poly(a))
