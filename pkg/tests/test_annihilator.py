import random
from fractions import Fraction

import numpy as np
import pytest

from geneig import PolyQ, as_matrix, as_vector, build_annihilator_table, char_poly, factor_rationals, mat_poly_apply_vec, minimal_polynomial
from geneig.annihilator import certified_char_factorization
from geneig.genmat import companion_matrix
from geneig.matrix import basis_vector, identity, is_zero_matrix, is_zero_vector, mat_poly_eval, zeros

from conftest import F1, F2


def rand_matrix(rng, n, bound=5):
    return as_matrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])


class TestMinimalPolynomial:
    def test_companion_first_basis_vector(self, companion6):
        assert minimal_polynomial(companion6, basis_vector(6, 0)) == F1**3

    def test_sample10_short_vector(self, sample10):
        assert minimal_polynomial(sample10, basis_vector(10, 1)) == F1

    def test_zero_matrix(self):
        assert minimal_polynomial(zeros(3, 3), as_vector([1, 2, 3])) == PolyQ.variable()

    def test_zero_vector(self):
        assert minimal_polynomial(identity(3), as_vector([0, 0, 0])) == PolyQ.one()

    def test_cap_accepted_when_annihilating(self, companion6):
        pi = minimal_polynomial(companion6, basis_vector(6, 0), cap=F1**3)
        assert pi == F1**3

    def test_cap_rejected_when_invalid(self, companion6):
        with pytest.raises(ValueError):
            minimal_polynomial(companion6, basis_vector(6, 0), cap=F1**2)
        with pytest.raises(ValueError):
            # right degree, wrong polynomial
            minimal_polynomial(companion6, basis_vector(6, 0), cap=F2**3)

    def test_annihilates_exactly(self, sample10):
        for j in range(10):
            e = basis_vector(10, j)
            pi = minimal_polynomial(sample10, e)
            assert is_zero_vector(mat_poly_apply_vec(pi, sample10, e))


SAMPLE10_TABLE = {
    1: F1 * F2, 2: F1, 3: F1**2 * F2, 4: F1**3, 5: F1**3,
    6: F1**3 * F2, 7: F1**3, 8: F1**3 * F2, 9: F1, 10: F1 * F2,
}


class TestAnnihilatorTable:
    def test_sample10_full_table(self, sample10):
        table = build_annihilator_table(sample10)
        for j in range(1, 11):
            assert table.min_polys[j - 1] == SAMPLE10_TABLE[j], f"basis vector {j}"
        assert table.min_poly == F1**3 * F2
        d1, d2 = table.factor_data(F1), table.factor_data(F2)
        assert (d1.min_multiplicity, d1.char_multiplicity) == (3, 4)
        assert (d2.min_multiplicity, d2.char_multiplicity) == (1, 1)
        # cofactors multiply back to the minimal annihilating polynomials
        for j in range(10):
            if d1.exponents[j]:
                assert d1.cofactors[j] * F1 ** d1.exponents[j] == table.min_polys[j]

    def test_diagonal(self):
        table = build_annihilator_table(as_matrix([[1, 0], [0, 2]]))
        assert table.min_polys == [PolyQ([-1, 1]), PolyQ([-2, 1])]
        assert table.min_poly == PolyQ([-1, 1]) * PolyQ([-2, 1])

    def test_identity(self):
        table = build_annihilator_table(identity(3))
        assert all(pi == PolyQ([-1, 1]) for pi in table.min_polys)
        assert table.min_poly == PolyQ([-1, 1])
        assert table.factors[0].char_multiplicity == 3

    def test_min_poly_annihilates_matrix(self, sample10):
        table = build_annihilator_table(sample10)
        assert is_zero_matrix(mat_poly_eval(table.min_poly, sample10))
        assert table.min_poly.degree <= 10

    def test_proper_divisors_do_not_annihilate(self, sample10):
        table = build_annihilator_table(sample10)
        for j in range(10):
            pi = table.min_polys[j]
            e = basis_vector(10, j)
            factorization = factor_rationals(pi)
            for f, m in factorization:
                divisor = pi // f
                assert not is_zero_vector(mat_poly_apply_vec(divisor, sample10, e))

    def test_degree_accounting(self, sample10):
        table = build_annihilator_table(sample10)
        assert sum(f.degree * m for f, m in table.char_factorization) == 10
        for data in table.factors:
            assert 1 <= data.min_multiplicity <= data.char_multiplicity

    def test_custom_basis(self, sample10):
        basis = [basis_vector(10, j) for j in range(10)]
        basis[0] = basis[0] + 2 * basis[1]
        table = build_annihilator_table(sample10, basis=basis)
        assert table.min_poly == F1**3 * F2
        pi = table.min_polys[0]
        assert is_zero_vector(mat_poly_apply_vec(pi, sample10, basis[0]))


class TestMethodEquivalence:
    def test_factored_matches_krylov(self, sample10):
        krylov = build_annihilator_table(sample10, min_poly_method="krylov")
        factored = build_annihilator_table(sample10, min_poly_method="factored")
        assert krylov.min_polys == factored.min_polys
        assert krylov.min_poly == factored.min_poly
        assert krylov.char_factorization == factored.char_factorization

    def test_random_equivalence(self):
        rng = random.Random(999)
        for _ in range(12):
            n = rng.randint(2, 7)
            a = rand_matrix(rng, n)
            krylov = build_annihilator_table(a, min_poly_method="krylov")
            factored = build_annihilator_table(a, min_poly_method="factored")
            assert krylov.min_polys == factored.min_polys
            assert krylov.char_factorization == factored.char_factorization

    def test_certified_char_matches_direct(self):
        rng = random.Random(321)
        for _ in range(12):
            n = rng.randint(2, 7)
            a = rand_matrix(rng, n)
            table = build_annihilator_table(a, min_poly_method="krylov", char_method="berkowitz")
            min_factorization = factor_rationals(table.min_poly)
            certified = certified_char_factorization(a, min_factorization)
            assert certified == factor_rationals(char_poly(a))

    def test_certified_char_rational_entries(self):
        a = as_matrix([[Fraction(1, 2), 1], [0, Fraction(1, 2)]])
        table = build_annihilator_table(a, char_method="certified")
        assert table.char_factorization.factors == ((PolyQ([Fraction(-1, 2), 1]), 2),)
