import random

import pytest

from oracles import faces_of, poly_multiply_then_reduce, random_complexes
from toricalg.complex import SimplicialComplex, boundary_complex, indices, join
from toricalg.facering import (
    LinearForm,
    NotNicePolynomial,
    Ring,
    SquareFreePolynomial,
    complex_of_nice_polynomial,
    monomials_of_degree,
    multiply_mod_ideal,
    polynomial_of_complex,
    reduce_mod_ideal,
    sigma,
    verify_symmetric_identity,
)
from toricalg.linalg import CoefficientOverflow

Z, F2 = Ring.INTEGERS, Ring.GF2


def P(text, m, ring=Z):
    return SquareFreePolynomial.parse(text, m, ring)


PRISM_SIGMA3 = "x1x2x3+x1x2x4+x1x3x4+x2x3x5+x2x4x5+x3x4x5"
CUT_PRISM_SIGMA3 = "x1x2x3+x1x2x4+x1x3x6+x1x4x6+x3x4x6+x2x3x5+x2x4x5+x3x4x5"


class TestText:
    def test_canonical_order(self):
        assert str(P("x3x2 + x1", 3)) == "x1 + x2x3"

    def test_signs_and_coefficients(self):
        assert str(P("-2x1x2 + x3 - x1", 3)) == "-x1 - 2x1x2 + x3"

    def test_zero_and_constant(self):
        assert str(SquareFreePolynomial.zero(Z, 2)) == "0"
        assert str(SquareFreePolynomial.one(Z, 2)) == "1"

    @pytest.mark.parametrize("text", ["x1x2 - x2x3 + x1x4 - x3x4", "1 + 3x1 - 7x2x3", "0"])
    def test_round_trip(self, text):
        assert str(P(text, 4)) == text

    def test_gf2_coefficients_reduce(self):
        assert P("x1 + x1 + x2", 2, F2) == P("x2", 2, F2)


class TestReduce:
    def test_square_nonface(self, square):
        k = boundary_complex(square)
        assert reduce_mod_ideal(P("x1x3 + x1x2", 4), k) == P("x1x2", 4)

    def test_full_simplex_keeps_everything(self):
        full = SimplicialComplex.from_faces(4, [[1, 2, 3, 4]])
        f = P("x1x2x3 - 4x2 + x1x4", 4)
        assert reduce_mod_ideal(f, full) == f

    def test_prism_cubics(self, prism):
        all_cubics = SquareFreePolynomial.from_terms(Z, 5, ((mk, 1) for mk in monomials_of_degree(5, 3)))
        assert len(all_cubics.terms) == 10
        assert reduce_mod_ideal(all_cubics, boundary_complex(prism)) == P(PRISM_SIGMA3, 5)

    def test_mismatch(self, square):
        with pytest.raises(ValueError):
            reduce_mod_ideal(P("x1", 5), boundary_complex(square))

    def test_idempotent_and_linear(self, prism):
        k = boundary_complex(prism)
        rng = random.Random(3)
        for _ in range(30):
            f = _random_poly(rng, 5)
            g = _random_poly(rng, 5)
            assert reduce_mod_ideal(reduce_mod_ideal(f, k), k) == reduce_mod_ideal(f, k)
            assert reduce_mod_ideal(f + g.scale(3), k) == reduce_mod_ideal(f, k) + reduce_mod_ideal(g, k).scale(3)


def _random_poly(rng, m, ring=Z, max_deg=3):
    pairs = []
    for _ in range(rng.randint(0, 6)):
        mask = 0
        for v in rng.sample(range(m), rng.randint(0, min(max_deg, m))):
            mask |= 1 << v
        pairs.append((mask, rng.randint(-3, 3)))
    return SquareFreePolynomial.from_terms(ring, m, pairs)


class TestSigma:
    def test_prism(self, prism):
        assert sigma(boundary_complex(prism), 3) == P(PRISM_SIGMA3, 5)

    def test_cut_prism(self, cutprism):
        assert sigma(boundary_complex(cutprism), 3) == P(CUT_PRISM_SIGMA3, 6)

    def test_degree_one(self, any_polytope):
        m = any_polytope.m
        assert sigma(boundary_complex(any_polytope), 1) == SquareFreePolynomial.from_monomials(
            Z, m, ([i] for i in range(1, m + 1))
        )

    def test_out_of_range(self, square):
        with pytest.raises(ValueError):
            sigma(boundary_complex(square), 3)
        with pytest.raises(ValueError):
            sigma(boundary_complex(square), 0)

    @pytest.mark.parametrize("ring", [Z, F2])
    def test_term_count_is_f_vector(self, any_polytope, ring):
        k = boundary_complex(any_polytope)
        for i, count in enumerate(k.f_vector(), 1):
            assert len(sigma(k, i, ring).terms) == count


class TestMultiply:
    def test_prism_factorization(self, prism):
        k = boundary_complex(prism)
        assert multiply_mod_ideal(P("x1+x5", 5), P("x2x3+x2x4+x3x4", 5), k) == sigma(k, 3)

    def test_identity(self):
        f = P("x1x2 - 3x3", 3)
        assert multiply_mod_ideal(f, SquareFreePolynomial.one(Z, 3)) == f

    def test_square_colors(self, square):
        k = boundary_complex(square)
        got = multiply_mod_ideal(P("x1+x3", 4), P("x2+x4", 4), k)
        expected = poly_multiply_then_reduce({frozenset([1]): 1, frozenset([3]): 1}, {frozenset([2]): 1, frozenset([4]): 1}, k)
        assert {frozenset(indices(mk)): c for mk, c in got.terms.items()} == expected
        assert got == sigma(k, 2)

    def test_squares_vanish(self):
        assert multiply_mod_ideal(P("x1", 2), P("x1 + x2", 2)) == P("x1x2", 2)

    def test_ring_mismatch(self):
        with pytest.raises(ValueError):
            multiply_mod_ideal(P("x1", 2), P("x1", 2, F2))

    def test_overflow_reported(self):
        big = SquareFreePolynomial.from_terms(Z, 2, [(1, 2**40)])
        with pytest.raises(CoefficientOverflow):
            multiply_mod_ideal(big, SquareFreePolynomial.from_terms(Z, 2, [(2, 2**40)]))

    def test_matches_free_ring_oracle(self):
        rng = random.Random(11)
        for k in random_complexes(60, seed=5, max_m=8):
            m = k.num_vertices
            for _ in range(3):
                f = _random_poly(rng, m, max_deg=2)
                g = _random_poly(rng, m, max_deg=2)
                got = multiply_mod_ideal(f, g, k)
                fo = {frozenset(indices(a)): c for a, c in f.terms.items()}
                go = {frozenset(indices(a)): c for a, c in g.terms.items()}
                expected = poly_multiply_then_reduce(fo, go, k)
                assert {frozenset(indices(mk)): c for mk, c in got.terms.items()} == expected


class TestNicePolynomials:
    def test_polynomial_of_prism_is_sigma(self, prism):
        k = boundary_complex(prism)
        assert polynomial_of_complex(k) == sigma(k, 3)

    def test_single_face(self):
        k = SimplicialComplex.from_faces(3, [[1, 2, 3]])
        assert polynomial_of_complex(k) == P("x1x2x3", 3)

    def test_non_pure(self):
        k = SimplicialComplex.from_faces(3, [[1, 2], [3]])
        assert polynomial_of_complex(k) == P("x1x2 + x3", 3)

    def test_square_from_polynomial(self, square):
        assert complex_of_nice_polynomial(P("x1x2+x2x3+x3x4+x4x1", 4)) == boundary_complex(square)

    def test_nested_support(self):
        with pytest.raises(NotNicePolynomial, match="divides"):
            complex_of_nice_polynomial(P("x1x2 + x1", 2))

    def test_coefficient(self):
        with pytest.raises(NotNicePolynomial, match="coefficients"):
            complex_of_nice_polynomial(P("2x1x2", 2))

    def test_round_trips(self):
        for k in random_complexes(200, seed=1):
            f = polynomial_of_complex(k)
            assert complex_of_nice_polynomial(f) == k
            assert polynomial_of_complex(complex_of_nice_polynomial(f)) == f

    def test_join_is_product(self):
        ks = random_complexes(40, seed=2, max_m=6)
        for k1, k2 in zip(ks, ks[1:]):
            j = join(k1, k2)
            m = j.num_vertices
            f1 = SquareFreePolynomial(Z, m, dict(polynomial_of_complex(k1).terms))
            f2 = SquareFreePolynomial(Z, m, {mk << k1.num_vertices: c for mk, c in polynomial_of_complex(k2).terms.items()})
            assert polynomial_of_complex(j) == multiply_mod_ideal(f1, f2)


class TestSymmetricIdentity:
    def test_cube(self, cube3):
        lambdas = [LinearForm.of(Z, [1 if j in pair else 0 for j in range(1, 7)]) for pair in [(1, 4), (2, 5), (3, 6)]]
        assert verify_symmetric_identity(boundary_complex(cube3), lambdas, 3) == {1: True, 2: True, 3: True}

    def test_square(self, square):
        lambdas = [LinearForm.of(Z, [1, 0, 1, 0]), LinearForm.of(Z, [0, 1, 0, 1])]
        assert verify_symmetric_identity(boundary_complex(square), lambdas, 2) == {1: True, 2: True}

    def test_prism_fails_in_top_degree(self, prism):
        lambdas = [LinearForm.of(Z, [1, 0, 0, 0, 1]), LinearForm.of(Z, [0, 1, 0, 0, 0]), LinearForm.of(Z, [0, 0, 1, 0, 0])]
        assert verify_symmetric_identity(boundary_complex(prism), lambdas, 3)[3] is False

    def test_faces_oracle(self, prism):
        # sigma(k, i) supports are exactly the i-element faces
        k = boundary_complex(prism)
        for i in (1, 2, 3):
            supports = {frozenset(indices(mk)) for mk in sigma(k, i).terms}
            assert supports == {f for f in faces_of(k) if len(f) == i}
