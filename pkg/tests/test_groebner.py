import random
from fractions import Fraction

import pytest

from detsing import (
    GREVLEX,
    LEX,
    Ideal,
    LimitError,
    Polynomial,
    PreconditionError,
    VariableSet,
    buchberger,
    colength,
    colength_at_origin,
    dimension,
    eliminate,
    ideal_product,
    ideal_quotient,
    ideal_sum,
    ideals_equal,
    in_ideal,
    is_zero_ideal,
    normal_form,
    s_polynomial,
    saturation,
    support_is_origin_only,
)
from helpers import P, XY, XYZ, omega_vars, random_poly
from oracles import (
    monomial_ideal_dimension,
    stable_corank,
    standard_monomial_count,
)


def ideal(vs, *texts):
    return Ideal([P(t, vs) for t in texts], vs)


class TestBuchberger:
    def test_circle_line_reduced_basis(self):
        I = ideal(XY, "x^2 + y^2 - 1", "x - y")
        basis = I.groebner_basis()
        assert [g for g in basis] == [P("x - y", XY), P("y^2 - 1/2", XY)]
        # Oracle: both generators reduce to zero, and every S-pair does.
        for g in I.generators:
            assert normal_form(g, basis).is_zero()
        elems = list(basis)
        for i in range(len(elems)):
            for j in range(i + 1, len(elems)):
                s = s_polynomial(elems[i], elems[j], GREVLEX)
                assert normal_form(s, basis).is_zero()
        # Two-way membership against the generators.
        for g in basis:
            assert in_ideal(g, I)

    def test_already_reduced(self):
        basis = ideal(XY, "x", "y").groebner_basis()
        assert set(basis) == {P("x", XY), P("y", XY)}

    def test_unit_ideal(self):
        basis = ideal(XY, "x", "x + 1").groebner_basis()
        assert basis.is_unit()
        assert list(basis) == [Polynomial.constant(XY, 1)]

    def test_reduced_basis_is_unique(self):
        a = ideal(XY, "x^2 + y^2 - 1", "x - y")
        b = ideal(XY, "x - y", "2*x^2 + 2*y^2 - 2", "x^2 + y^2 - 1 + x - y")
        assert ideals_equal(a, b)
        assert a.groebner_basis().elements == b.groebner_basis().elements

    def test_reduced_basis_shape(self):
        rng = random.Random(21)
        for _ in range(10):
            gens = [random_poly(rng, XY, 3) for _ in range(2)]
            gens = [g for g in gens if not g.is_zero()]
            if not gens:
                continue
            basis = Ideal(gens, XY).groebner_basis()
            lts = basis.leading_monomials()
            for i, g in enumerate(basis):
                assert g.leading_coefficient() == 1
                for j, lt in enumerate(lts):
                    if i == j:
                        continue
                    for mono in g.terms:
                        assert not all(a <= b for a, b in zip(lt, mono))

    def test_degree_cap(self):
        with pytest.raises(LimitError):
            buchberger(ideal(XY, "x^5 - y", "y^5 - x"), GREVLEX, max_degree=2)

    def test_all_spairs_reduce_to_zero(self):
        rng = random.Random(23)
        for _ in range(8):
            gens = [random_poly(rng, XYZ, 2) for _ in range(2)]
            gens = [g for g in gens if not g.is_zero()]
            if not gens:
                continue
            basis = Ideal(gens, XYZ).groebner_basis()
            elems = list(basis)
            for i in range(len(elems)):
                for j in range(i + 1, len(elems)):
                    s = s_polynomial(elems[i], elems[j], GREVLEX)
                    assert normal_form(s, basis).is_zero()


class TestNormalForm:
    def test_two_step_reduction(self):
        basis = ideal(XY, "x^2 - y").groebner_basis()
        assert normal_form(P("x^2*y", XY), basis) == P("y^2", XY)

    def test_basis_elements_reduce_to_zero(self):
        basis = ideal(XY, "x^2 + y^2 - 1", "x - y").groebner_basis()
        for g in basis:
            assert normal_form(g, basis).is_zero()

    def test_unit_remainder(self):
        basis = ideal(XY, "x", "y").groebner_basis()
        one = Polynomial.constant(XY, 1)
        assert normal_form(one, basis) == one

    def test_membership_consistent_across_orderings(self):
        rng = random.Random(33)
        I = ideal(XY, "x^2 - y", "x*y - 1")
        for _ in range(20):
            f = random_poly(rng, XY, 2) * I.generators[rng.randrange(2)]
            assert normal_form(f, I.groebner_basis(GREVLEX)).is_zero()
            assert normal_form(f, I.groebner_basis(LEX)).is_zero()


class TestSumsProducts:
    def test_sum(self):
        assert ideals_equal(
            ideal_sum(ideal(XY, "x"), ideal(XY, "y")), ideal(XY, "x", "y")
        )

    def test_product(self):
        assert ideals_equal(
            ideal_product(ideal(XY, "x"), ideal(XY, "y")), ideal(XY, "x*y")
        )

    def test_sum_idempotent(self):
        I = ideal(XY, "x^2 - y")
        assert ideals_equal(ideal_sum(I, I), I)


class TestEliminate:
    def test_free_variable(self):
        out = eliminate(ideal(XY, "x - y^2"), ["x"])
        assert is_zero_ideal(out)

    def test_hand_elimination(self):
        out = eliminate(ideal(XY, "x - y^2", "x"), ["x"])
        target = out.vars
        assert ideals_equal(out, Ideal([P("y^2", target)], target))
        # Membership both ways.
        assert in_ideal(P("y^2", target), out)
        assert in_ideal(P("y^2", XY).restrict(target), out)

    def test_inversion_pattern(self):
        vs = VariableSet(("x", "y", "t"))
        out = eliminate(ideal(vs, "x*t - 1"), ["t"])
        assert is_zero_ideal(out)
        # Adding y - x keeps y - x in the subring: elimination is (y - x),
        # not (0).
        out2 = eliminate(ideal(vs, "x*t - 1", "y - x"), ["t"])
        target = out2.vars
        assert ideals_equal(out2, Ideal([P("y - x", target)], target))

    def test_cannot_drop_everything(self):
        from detsing import ValidationError

        with pytest.raises(ValidationError):
            eliminate(ideal(XY, "x"), ["x", "y"])


class TestQuotientSaturation:
    def test_strip_common_factor(self):
        out = saturation(ideal(XYZ, "x*y", "x*z"), ideal(XYZ, "x"))
        assert ideals_equal(out, ideal(XYZ, "y", "z"))

    def test_square_colon(self):
        out = ideal_quotient(ideal(XY, "x^2"), P("x", XY))
        assert ideals_equal(out, ideal(XY, "x"))

    def test_unit_saturator(self):
        I = ideal(XY, "x^2 - y")
        assert ideals_equal(saturation(I, ideal(XY, "1")), I)

    def test_saturation_idempotent(self):
        rng = random.Random(55)
        for _ in range(6):
            I = Ideal(
                [random_poly(rng, XY, 3), random_poly(rng, XY, 2)], XY
            )
            J = ideal(XY, "x")
            once = saturation(I, J)
            twice = saturation(once, J)
            assert ideals_equal(once, twice)

    def test_zero_divisor_rejected(self):
        with pytest.raises(PreconditionError):
            ideal_quotient(ideal(XY, "x"), Polynomial.zero(XY))


class TestDimension:
    def test_generic_two_by_three(self):
        names = tuple(f"a{i}" for i in range(6))
        vs = VariableSet(names)
        I = Ideal(
            [
                P("a0*a4 - a1*a3", vs),
                P("a0*a5 - a2*a3", vs),
                P("a1*a5 - a2*a4", vs),
            ],
            vs,
        )
        assert dimension(I) == 4

    def test_fat_point(self):
        vs = omega_vars()
        assert dimension(ideal(vs, "x1", "x2", "x3", "x4", "x5", "y^2")) == 0

    def test_unit_ideal_convention(self):
        assert dimension(ideal(XY, "1")) == -1

    def test_zero_ideal(self):
        assert dimension(Ideal((), XY)) == 2

    def test_monomial_ideals_match_combinatorial_value(self):
        rng = random.Random(77)
        vs = VariableSet(tuple("abcdef"[:4]))
        for _ in range(20):
            monos = []
            for _ in range(rng.randint(1, 4)):
                exps = [0] * 4
                for _ in range(rng.randint(1, 3)):
                    exps[rng.randrange(4)] += 1
                monos.append(tuple(exps))
            gens = [Polynomial(vs, {m: Fraction(1)}) for m in monos]
            got = dimension(Ideal(gens, vs))
            lts = Ideal(gens, vs).groebner_basis().leading_monomials()
            assert got == monomial_ideal_dimension(lts, 4)
            assert got == monomial_ideal_dimension(monos, 4)


class TestSupport:
    def test_fat_point_true(self):
        vs = omega_vars()
        assert support_is_origin_only(
            ideal(vs, "x1", "x2", "x3", "x4", "x5", "y^4")
        )

    def test_node_cone_false(self):
        assert not support_is_origin_only(ideal(XY, "x^2 - y^2"))

    def test_skew_pair_true(self):
        I = ideal(XY, "x*y", "x - y")
        assert support_is_origin_only(I)
        assert in_ideal(P("y^2", XY), I)


class TestColength:
    def test_fat_point(self):
        vs = omega_vars()
        assert colength(ideal(vs, "x1", "x2", "x3", "x4", "x5", "y^4")) == 4

    def test_maximal_ideal(self):
        assert colength(ideal(XY, "x", "y")) == 1

    def test_staircase(self):
        I = ideal(XY, "x^2", "x*y", "y^3")
        assert colength(I) == 4  # standard monomials 1, x, y, y^2
        assert stable_corank(list(I.generators)) == 4

    def test_rejects_positive_dimension(self):
        with pytest.raises(PreconditionError):
            colength(ideal(XY, "x"))

    def test_rejects_support_off_origin(self):
        with pytest.raises(PreconditionError):
            colength(ideal(XY, "x - 1", "y"))

    def test_standard_monomial_recount(self):
        I = ideal(XY, "x^3 - y", "y^2")
        c = colength(I)
        assert c == standard_monomial_count(I.groebner_basis(), 2)
        assert c == stable_corank(list(I.generators))

    def test_colength_at_origin_splits_off_far_points(self):
        # x(x-1) = 0 and y = 0: two reduced points; only one at the origin.
        I = ideal(XY, "x^2 - x", "y")
        assert colength_at_origin(I) == 1
        # Fat origin plus a far point.
        J = ideal(XY, "x^2*(x - 1)", "y")
        assert colength_at_origin(J) == 2
        # Unit ideal: nothing anywhere.
        assert colength_at_origin(ideal(XY, "1")) == 0
