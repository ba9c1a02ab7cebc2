import random
from itertools import combinations
from math import comb

import pytest

from detsing import (
    DeterminantalType,
    GeneratorMatrix,
    Polynomial,
    PresentationMatrix,
    ValidationError,
    VariableSet,
    chain_rule_check,
    dm_matrix,
    in_ideal,
    jacobian_generators,
    minors,
    n_generators,
    stratum,
)
from detsing.groebner import Ideal
from helpers import P, omega_model, random_matrix_model


class TestMinors:
    def test_omega_two_by_two(self):
        m = omega_model(2)
        vs = m.vars
        got = minors(m, 2)
        expected = [
            P("x1*x5 - x2*x4", vs),
            P("x1*(x1 + y^3) - x3*x4", vs),
            P("x2*(x1 + y^3) - x3*x5", vs),
        ]
        assert got == expected

    def test_size_one_is_entries(self):
        m = omega_model(1)
        assert minors(m, 1) == [e for row in m.entries for e in row]

    def test_generic_two_by_two_determinant(self):
        vs = VariableSet(("a", "b", "c", "d"))
        entries = [[P("a", vs), P("b", vs)], [P("c", vs), P("d", vs)]]
        m = PresentationMatrix(DeterminantalType(2, 0, 2), entries, vs)
        assert minors(m, 2) == [P("a*d - b*c", vs)]

    def test_count_matches_binomials(self):
        rng = random.Random(3)
        for rows, cols in [(2, 2), (3, 2), (4, 3), (5, 4)]:
            m = random_matrix_model(rng, rows, cols, 3, max_degree=1)
            for size in range(1, min(rows, cols) + 1):
                assert len(minors(m, size)) == comb(rows, size) * comb(cols, size)

    def test_size_out_of_range(self):
        with pytest.raises(ValidationError):
            minors(omega_model(1), 3)


class TestStratum:
    def test_omega_dimensions(self):
        m = omega_model(3)
        s2 = stratum(m, 2)
        assert (s2.expected_codim, s2.expected_dim) == (2, 4)
        s1 = stratum(m, 1)
        assert (s1.expected_codim, s1.expected_dim) == (6, 0)
        assert s1.present and s2.present

    def test_absent_stratum(self):
        vs = VariableSet(tuple(f"v{i}" for i in range(5)))
        rng = random.Random(4)
        entries = [
            [P(f"v{(r + c) % 5}", vs) for c in range(2)] for r in range(3)
        ]
        m = PresentationMatrix(DeterminantalType(2, 1, 2), entries, vs)
        s1 = stratum(m, 1)
        assert s1.expected_dim == -1
        assert not s1.present

    def test_expected_dim_grid(self):
        for n in range(1, 5):
            for k in range(0, 3):
                for t in range(1, n + 1):
                    d = DeterminantalType(n, k, t)
                    for q in range(1, 12):
                        assert d.expected_dim(t, q) == q - (n - t + 1) * (
                            n + k - t + 1
                        )

    def test_strata_nesting(self):
        # Each i-minor lies in the ideal of the (i-1)-minors.
        m = omega_model(1)
        deeper = Ideal(minors(m, 1), m.vars)
        for f in minors(m, 2):
            assert in_ideal(f, deeper)
        rng = random.Random(5)
        g = random_matrix_model(rng, 3, 3, 3, max_degree=1)
        for i in (2, 3):
            deeper = Ideal(minors(g, i - 1), g.vars)
            for f in minors(g, i):
                assert in_ideal(f, deeper)


class TestGeneratorMatrices:
    def test_jacobian_entry(self):
        m = omega_model(1)
        jac = jacobian_generators(minors(m, 2), m.vars)
        # Second minor is x1^2 + x1*y^2 - x3*x4; d/dx1 = 2*x1 + y^2.
        assert jac.entries[1][0] == P("2*x1 + y^2", m.vars)
        assert jac.rows == 3 and jac.cols == 6

    def test_jacobian_single_poly(self):
        vs = VariableSet(("x", "y"))
        jac = jacobian_generators([P("x^2", vs)], vs)
        assert jac.entries == ((P("2*x", vs), Polynomial.zero(vs)),)

    def test_jacobian_constants(self):
        vs = VariableSet(("x", "y"))
        jac = jacobian_generators([Polynomial.constant(vs, 5)], vs)
        assert all(e.is_zero() for row in jac.entries for e in row)

    def test_n_generators_cofactors(self):
        vs = VariableSet(("a", "b", "c", "d"))
        entries = [[P("a", vs), P("b", vs)], [P("c", vs), P("d", vs)]]
        m = PresentationMatrix(DeterminantalType(2, 0, 2), entries, vs)
        ng = n_generators(m, 2)
        assert ng.entries == (
            (P("d", vs), P("-c", vs), P("-b", vs), P("a", vs)),
        )

    def test_n_generators_identity_pattern(self):
        m = omega_model(1)
        ng = n_generators(m, 1)
        one = Polynomial.constant(m.vars, 1)
        for r in range(6):
            for c in range(6):
                assert ng.entries[r][c] == (one if r == c else Polynomial.zero(m.vars))

    def test_n_generators_omega_cofactor_oracle(self):
        # Rows indexed by the three 2x2 minors of the generic 2x3 matrix;
        # recompute each derivative by expanding the minor by hand.
        m = omega_model(2)
        ng = n_generators(m, 2)
        assert ng.rows == 3 and ng.cols == 6
        e = {
            (r, c): m.entries[r][c] for r in range(2) for c in range(3)
        }
        col_pairs = list(combinations(range(3), 2))
        zero = Polynomial.zero(m.vars)
        for row_idx, (c1, c2) in enumerate(col_pairs):
            # minor = e[0,c1]*e[1,c2] - e[0,c2]*e[1,c1]
            expected = {
                (0, c1): e[1, c2],
                (1, c2): e[0, c1],
                (0, c2): -e[1, c1],
                (1, c1): -e[0, c2],
            }
            for pos in range(6):
                r, c = divmod(pos, 3)
                assert ng.entries[row_idx][pos] == expected.get((r, c), zero)

    def test_dm_matrix_rows(self):
        m = omega_model(1)
        dm = dm_matrix(m)
        assert dm.rows == 6 and dm.cols == 6
        # Row for entry (2,3) = x1 + y^2: gradient (1,0,0,0,0,2y).
        row = dm.entries[5]
        assert row[0] == Polynomial.constant(m.vars, 1)
        assert row[5] == P("2*y", m.vars)
        assert all(row[i].is_zero() for i in range(1, 5))

    def test_dm_constant_matrix_is_zero(self):
        vs = VariableSet(("x",))
        entries = [[Polynomial.constant(vs, 1)], [Polynomial.constant(vs, 2)]]
        m = PresentationMatrix(DeterminantalType(1, 1, 1), entries, vs)
        assert all(e.is_zero() for row in dm_matrix(m).entries for e in row)


class TestChainRule:
    def test_omega_all_k(self):
        for k in range(1, 6):
            assert chain_rule_check(omega_model(k), 2)
            assert chain_rule_check(omega_model(k), 1)

    def test_random_quadratic_matrices(self):
        rng = random.Random(42)
        for _ in range(4):
            m = random_matrix_model(rng, 3, 2, 4, max_degree=2)
            assert chain_rule_check(m, 2)

    def test_corruption_reports_position(self):
        m = omega_model(1)
        jac = jacobian_generators(minors(m, 2), m.vars)
        product = n_generators(m, 2).multiply(dm_matrix(m))
        rows = [list(r) for r in product.entries]
        rows[1][0] = rows[1][0] + Polynomial.constant(m.vars, 1)
        assert jac.first_mismatch(GeneratorMatrix(rows)) == (1, 0)
