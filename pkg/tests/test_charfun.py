from itertools import product

import pytest

from toricalg.charfun import (
    CharMatrix,
    NotCharacteristic,
    almost_complex_check,
    buchstaber_decision,
    cyclic_claim_vectors,
    find_char_gf2,
    find_char_int,
    is_characteristic,
    minors_agree,
    orientation_from_lambda,
    sigma_equals_wedge,
    verify_sigma_factorization_gf2,
)
from toricalg.complex import Orientation, boundary_complex, indices
from toricalg.exterior import oriented_sigma_n, wedge_linear_forms
from toricalg.facering import Ring
from toricalg.formats import builtin, simplex

Z, F2 = Ring.INTEGERS, Ring.GF2

C47 = CharMatrix.from_rows(F2, [
    [1, 0, 0, 0, 1, 1, 0],
    [0, 1, 0, 0, 0, 1, 1],
    [0, 0, 1, 0, 1, 1, 1],
    [0, 0, 0, 1, 1, 0, 1],
])
C48 = CharMatrix.from_rows(F2, [
    [1, 0, 0, 0, 0, 1, 0, 1],
    [0, 1, 0, 0, 0, 0, 0, 1],
    [0, 0, 1, 0, 0, 0, 1, 1],
    [0, 0, 0, 1, 0, 1, 0, 1],
    [0, 0, 0, 0, 1, 0, 1, 1],
])
SAMPLE_L = CharMatrix.from_rows(Z, [[1, 1, 2, 3], [2, 3, 5, 7]])
PRIME_L = CharMatrix.from_rows(Z, [[1, 0, -1, 0], [0, 1, 0, -1]])
THREE_POLYTOPES = ["prism", "cube", "cutprism"]


def gf2_rank(rows):
    """Plain Gaussian elimination over GF(2) on lists of 0/1 rows."""
    rows = [list(r) for r in rows]
    rank = 0
    for col in range(len(rows[0]) if rows else 0):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def columns_ok_gf2(p, cols):
    return all(gf2_rank([cols[j - 1] for j in sorted(v)]) == p.n for v in p.vertices)


class TestMatrix:
    def test_rejects_zero_column(self):
        with pytest.raises(ValueError):
            CharMatrix.from_rows(Z, [[1, 0], [0, 0]])

    def test_rejects_non_binary_gf2(self):
        with pytest.raises(ValueError):
            CharMatrix.from_rows(F2, [[2, 1]])

    def test_columns(self):
        assert C47.column(6) == (1, 1, 1, 0)
        assert (C47.k, C47.m) == (4, 7)


class TestIsCharacteristic:
    def test_c47_matrix(self):
        p = builtin("cyclic:4:7")
        assert is_characteristic(p, C47)
        assert columns_ok_gf2(p, [C47.column(j) for j in range(1, 8)])

    def test_c48_five_row_matrix(self):
        assert is_characteristic(builtin("cyclic:4:8"), C48).ok

    def test_square_integer(self, square):
        assert is_characteristic(square, SAMPLE_L)
        assert is_characteristic(square, PRIME_L)

    def test_failing_vertices_listed(self, square):
        bad = CharMatrix.from_rows(Z, [[1, 0, 2, 0], [0, 1, 0, 1]])
        report = is_characteristic(square, bad)
        assert not report and report.failing == [(2, 3), (3, 4)]

    def test_integer_needs_n_rows(self, square):
        with pytest.raises(ValueError):
            is_characteristic(square, CharMatrix.from_rows(Z, [[1, 0, 1, 0], [0, 1, 0, 1], [1, 1, 1, 1]]))

    def test_column_count(self, square):
        with pytest.raises(ValueError):
            is_characteristic(square, CharMatrix.from_rows(Z, [[1, 0, 1], [0, 1, 1]]))


class TestGF2Search:
    def test_c48_four_rows_none(self):
        result = find_char_gf2(builtin("cyclic:4:8"), 4)
        assert not result.found
        assert 0 < result.leaves <= 15**4

    def test_c48_unpruned_oracle(self):
        # independent confirmation: every gauge-fixed assignment of the four
        # remaining facets fails somewhere
        p = builtin("cyclic:4:8")
        first = min(tuple(sorted(v)) for v in p.vertices)
        rest = [j for j in range(1, 9) if j not in first]
        nonzero = [v for v in product((0, 1), repeat=4) if any(v)]
        basis = [tuple(int(r == i) for r in range(4)) for i in range(4)]
        for choice in product(nonzero, repeat=len(rest)):
            cols = [None] * 8
            for f, b in zip(first, basis):
                cols[f - 1] = b
            for f, c in zip(rest, choice):
                cols[f - 1] = c
            assert not columns_ok_gf2(p, cols)

    def test_c48_five_rows_found(self):
        p = builtin("cyclic:4:8")
        result = find_char_gf2(p, 5)
        assert result.found and is_characteristic(p, result.matrix)

    def test_c47(self):
        p = builtin("cyclic:4:7")
        result = find_char_gf2(p, 4)
        assert result.found and is_characteristic(p, result.matrix)

    @pytest.mark.parametrize("name", THREE_POLYTOPES + ["square", "simplex:3", "cube:4"])
    def test_found_matrices_valid(self, name):
        p = builtin(name)
        result = find_char_gf2(p, p.n)
        assert result.found and is_characteristic(p, result.matrix)

    def test_gauge(self, cube3):
        L = find_char_gf2(cube3, 3).matrix
        first = min(tuple(sorted(v)) for v in cube3.vertices)
        assert [L.column(f) for f in first] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def test_k_too_small(self, square):
        with pytest.raises(ValueError):
            find_char_gf2(square, 1)

    @pytest.mark.parametrize("name", ["cyclic:4:7", "cyclic:4:8", "cube"])
    def test_threads_deterministic(self, name):
        p = builtin(name)
        assert find_char_gf2(p, p.n, threads=2).matrix == find_char_gf2(p, p.n).matrix


class TestIntegerSearch:
    def test_square_gives_prime(self, square):
        result = find_char_int(square)
        assert result.matrix == PRIME_L and result.bound == 1

    @pytest.mark.parametrize("name", THREE_POLYTOPES + ["simplex:2", "simplex:3", "polygon:5", "cyclic:4:7"])
    def test_found_and_valid(self, name):
        p = builtin(name)
        result = find_char_int(p)
        assert result.found and is_characteristic(p, result.matrix)
        assert is_characteristic(p, result.matrix.mod2())

    def test_threads_deterministic(self, prism):
        assert find_char_int(prism, threads=2).matrix == find_char_int(prism).matrix

    def test_bad_bound(self, square):
        with pytest.raises(ValueError):
            find_char_int(square, 0)


class TestOrientationAndACS:
    def test_orientation_square(self, square):
        o = orientation_from_lambda(square, SAMPLE_L)
        assert {indices(f): s for f, s in o.signs} == {(1, 2): 1, (1, 4): 1, (2, 3): -1, (3, 4): -1}

    def test_orientation_rejects_bad_matrix(self, square):
        with pytest.raises(NotCharacteristic):
            orientation_from_lambda(square, CharMatrix.from_rows(Z, [[1, 0, 2, 0], [0, 1, 0, 1]]))

    def test_square(self, square):
        assert almost_complex_check(square, SAMPLE_L) is False
        assert almost_complex_check(square, PRIME_L) is True

    def test_projective_plane(self):
        tri = simplex(2)
        assert almost_complex_check(tri, CharMatrix.from_rows(Z, [[1, 0, -1], [0, 1, -1]]))
        assert not almost_complex_check(tri, CharMatrix.from_rows(Z, [[1, 0, 1], [0, 1, 1]]))

    def test_row_operations_preserve(self, square):
        ops = [[[1, 1], [0, 1]], [[0, 1], [1, 0]], [[2, 1], [1, 1]], [[-1, 0], [0, 1]]]
        for L in (SAMPLE_L, PRIME_L):
            for a in ops:
                rows = [[sum(a[i][t] * L.rows[t][j] for t in range(2)) for j in range(4)] for i in range(2)]
                moved = CharMatrix.from_rows(Z, rows)
                assert almost_complex_check(square, moved) == almost_complex_check(square, L)

    def test_rotation_preserves(self, square):
        for L in (SAMPLE_L, PRIME_L):
            rotated = CharMatrix.from_rows(Z, [r[1:] + r[:1] for r in L.rows])
            assert almost_complex_check(square, rotated) == almost_complex_check(square, L)

    @pytest.mark.parametrize("name", THREE_POLYTOPES + ["square", "simplex:3"])
    def test_sigma_equals_wedge_for_found(self, name):
        p = builtin(name)
        L = find_char_int(p).matrix
        assert sigma_equals_wedge(p, L, orientation_from_lambda(p, L))
        assert minors_agree(p, L)


class TestExteriorCharacterizations:
    def test_integer_equivalence_on_square(self, square):
        # L is characteristic iff sigma_n under some orientation equals the wedge
        k = boundary_complex(square)
        facets = k.sorted_facets()
        sigmas = [
            oriented_sigma_n(k, Orientation.from_dict(dict(zip(facets, signs))))
            for signs in product((1, -1), repeat=len(facets))
        ]
        hits = 0
        for entries in product((-1, 0, 1), repeat=8):
            rows = [list(entries[:4]), list(entries[4:])]
            if any(rows[0][j] == rows[1][j] == 0 for j in range(4)):
                continue
            L = CharMatrix.from_rows(Z, rows)
            wedge = wedge_linear_forms(L.lambdas(), k)
            char = bool(is_characteristic(square, L))
            assert char == any(s == wedge for s in sigmas)
            hits += char
        assert hits > 0

    @pytest.mark.parametrize("name", ["prism", "cube", "square", "simplex:3"])
    def test_gf2_equivalence(self, name):
        p = builtin(name)
        n = p.n
        first = min(tuple(sorted(v)) for v in p.vertices)
        rest = [j for j in range(1, p.m + 1) if j not in first]
        nonzero = [v for v in product((0, 1), repeat=n) if any(v)]
        found = 0
        for choice in product(nonzero, repeat=len(rest)):
            cols = [None] * p.m
            for i, f in enumerate(first):
                cols[f - 1] = tuple(int(r == i) for r in range(n))
            for f, c in zip(rest, choice):
                cols[f - 1] = c
            L = CharMatrix.from_columns(F2, cols)
            char = bool(is_characteristic(p, L))
            assert char == verify_sigma_factorization_gf2(p, L)
            found += char
        assert found > 0

    def test_c47_matrix_factorization(self):
        assert verify_sigma_factorization_gf2(builtin("cyclic:4:7"), C47)

    def test_factorization_needs_n_rows(self):
        with pytest.raises(ValueError):
            verify_sigma_factorization_gf2(builtin("cyclic:4:8"), C48)

    @pytest.mark.parametrize("name", ["prism", "cube", "cyclic:4:7"])
    def test_search_results_factor(self, name):
        p = builtin(name)
        assert verify_sigma_factorization_gf2(p, find_char_gf2(p, p.n).matrix)


class TestBuchstaber:
    @pytest.mark.parametrize("name", THREE_POLYTOPES)
    @pytest.mark.parametrize("field", [F2, Z])
    def test_three_polytopes(self, name, field):
        p = builtin(name)
        v = buchstaber_decision(p, field)
        assert v.status == "yes" and is_characteristic(p, v.matrix)
        if field is Z:
            assert sigma_equals_wedge(p, v.matrix, v.orientation)

    def test_c47(self):
        assert buchstaber_decision(builtin("cyclic:4:7"), F2).status == "yes"

    @pytest.mark.parametrize("field", [F2, Z])
    def test_c48(self, field):
        v = buchstaber_decision(builtin("cyclic:4:8"), field)
        assert v.status == "no" and v.matrix is None

    def test_claim_vectors(self):
        vecs = cyclic_claim_vectors(C47)
        assert len(vecs) == 14 and all(any(v) for v in vecs)
        assert len(set(vecs)) == 14
