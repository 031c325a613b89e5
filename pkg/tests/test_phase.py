import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirac_symmetry import (
    ParseError,
    PhasePolynomial,
    PhaseSpace,
    SpaceMismatchError,
    UndeclaredIdentifierError,
    parse_polynomial,
    poisson,
)

from conftest import poly, polynomial_strategy, random_polynomial
from oracles import same_polynomial, sympy_bracket, sympy_space

SPACE2 = PhaseSpace(2)
SPACE3 = PhaseSpace(3)


class TestPhaseSpace:
    def test_identifier_layout(self):
        space = PhaseSpace(2, ("E", "m"))
        assert space.identifiers == ("q1", "q2", "p1", "p2", "E", "m")
        assert space.index("p2") == 3

    def test_requires_energy_symbol(self):
        with pytest.raises(ValueError):
            PhaseSpace(1, ("m",))

    def test_rejects_variable_shaped_parameter(self):
        with pytest.raises(ValueError):
            PhaseSpace(2, ("E", "q3"))

    def test_rejects_duplicates_and_bad_names(self):
        with pytest.raises(ValueError):
            PhaseSpace(1, ("E", "E"))
        with pytest.raises(ValueError):
            PhaseSpace(1, ("E", "2m"))
        with pytest.raises(ValueError):
            PhaseSpace(0)

    def test_extend_appends_parameters(self):
        space = PhaseSpace(1)
        ext = space.extend(("v1", "u1"))
        assert ext.identifiers == ("q1", "p1", "E", "v1", "u1")
        assert ext.extends(space)
        assert not space.extends(ext)


class TestParsing:
    def test_mixed_terms(self):
        f = poly("q1^2*p2 + 3/2*p1", SPACE2)
        q1 = PhasePolynomial.variable(SPACE2, "q1")
        p1 = PhasePolynomial.variable(SPACE2, "p1")
        p2 = PhasePolynomial.variable(SPACE2, "p2")
        assert f == q1 * q1 * p2 + Fraction(3, 2) * p1

    def test_undeclared_identifier(self):
        with pytest.raises(UndeclaredIdentifierError):
            parse_polynomial("q3", SPACE2)

    def test_commutative_cancellation(self):
        assert poly("q1*p1 - p1*q1", PhaseSpace(1)).is_zero()

    def test_syntax_error_reports_position(self):
        with pytest.raises(ParseError) as err:
            parse_polynomial("q1 + * p1", SPACE2)
        assert err.value.position == 5

    def test_exponent_must_be_uint_literal(self):
        with pytest.raises(ParseError):
            parse_polynomial("q1^-2", SPACE2)
        with pytest.raises(ParseError):
            parse_polynomial("q1^(2)", SPACE2)

    def test_rational_literals(self):
        assert poly("-3/2", SPACE2) == PhasePolynomial.constant(SPACE2, Fraction(-3, 2))
        assert poly("2*-3", SPACE2) == PhasePolynomial.constant(SPACE2, -6)
        with pytest.raises(ParseError):
            parse_polynomial("1/0", SPACE2)

    def test_parenthesized_powers(self):
        assert poly("(q1 + p1)^2", SPACE2) == poly("q1^2 + 2*q1*p1 + p1^2", SPACE2)

    def test_leading_sign_tolerated(self):
        assert poly("-q1 + p1", SPACE2) == poly("p1 - q1", SPACE2)

    def test_zero_exponent(self):
        assert poly("q1^0", SPACE2) == PhasePolynomial.constant(SPACE2, 1)


class TestPrinting:
    def test_canonical_forms(self):
        cases = [
            ("0", "0"),
            ("5", "5"),
            ("-3/2", "-3/2"),
            ("q1", "q1"),
            ("-q1", "-1*q1"),
            ("q2 + q1", "q1 + q2"),
            ("2*p1 - q1^2*p2", "-1*q1^2*p2 + 2*p1"),
            ("3/2*p1 + q1^2*p2", "q1^2*p2 + 3/2*p1"),
        ]
        for source, expected in cases:
            assert str(poly(source, SPACE2)) == expected

    def test_graded_lex_order(self):
        f = poly("q1 + q1^2 + p2 + q1*p1", SPACE2)
        assert str(f) == "q1^2 + q1*p1 + q1 + p2"


class TestArithmetic:
    def test_additive_inverse(self):
        q1 = poly("q1", SPACE2)
        assert (q1 + (-q1)).is_zero()

    def test_difference_of_squares(self):
        assert poly("q1 + p1", SPACE2) * poly("q1 - p1", SPACE2) == poly(
            "q1^2 - p1^2", SPACE2
        )

    def test_scale(self):
        assert poly("q1*p1", SPACE2).scale(Fraction(2, 3)) == poly(
            "2/3*q1*p1", SPACE2
        )

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatchError):
            poly("q1", SPACE2) + poly("q1", SPACE3)
        with pytest.raises(SpaceMismatchError):
            poisson(poly("q1", SPACE2), poly("p1", SPACE3))

    def test_pow_rejects_negative(self):
        with pytest.raises(ValueError):
            poly("q1", SPACE2) ** -1

    def test_lift_to_extended_space(self):
        ext = SPACE2.extend(("v1",))
        f = poly("q1*p2 + 2", SPACE2).in_space(ext)
        assert f == parse_polynomial("q1*p2 + 2", ext)
        with pytest.raises(SpaceMismatchError):
            parse_polynomial("v1", ext).in_space(SPACE2)


class TestPartial:
    def test_power_rule(self):
        assert poly("q1^2*p2", SPACE2).partial("q1") == poly("2*q1*p2", SPACE2)

    def test_constant(self):
        assert poly("5", SPACE2).partial("p1").is_zero()

    def test_momentum_power(self):
        assert poly("q1*p1^2", SPACE2).partial("p1") == poly("2*q1*p1", SPACE2)

    def test_undeclared(self):
        with pytest.raises(KeyError):
            poly("q1", SPACE2).partial("q9")


class TestPoisson:
    def test_canonical_pair(self):
        assert poisson(poly("q1", SPACE2), poly("p1", SPACE2)) == poly("1", SPACE2)

    def test_self_bracket_vanishes(self):
        f = poly("q1^2*p2 + 3/2*p1*q2", SPACE2)
        assert poisson(f, f).is_zero()

    def test_angular_momentum_algebra(self):
        # Frozen from the independent sympy oracle: {L_x, L_y} = L_z.
        l_x = poly("q2*p3 - q3*p2", SPACE3)
        l_y = poly("q3*p1 - q1*p3", SPACE3)
        bracket = poisson(l_x, l_y)
        assert bracket == poly("q1*p2 - q2*p1", SPACE3)
        qs, ps, _ = sympy_space(3)
        oracle = sympy_bracket(
            qs[1] * ps[2] - qs[2] * ps[1], qs[2] * ps[0] - qs[0] * ps[2], qs, ps
        )
        assert same_polynomial(bracket, oracle)

    def test_canonical_relations_up_to_four(self):
        space = PhaseSpace(4)
        for i in range(1, 5):
            qi = parse_polynomial(f"q{i}", space)
            for j in range(1, 5):
                pj = parse_polynomial(f"p{j}", space)
                qj = parse_polynomial(f"q{j}", space)
                pi = parse_polynomial(f"p{i}", space)
                expected = 1 if i == j else 0
                assert poisson(qi, pj) == PhasePolynomial.constant(space, expected)
                assert poisson(qi, qj).is_zero()
                assert poisson(pi, pj).is_zero()

    def test_parameters_are_bracket_inert(self):
        space = PhaseSpace(1, ("E", "m"))
        f = parse_polynomial("m*q1 + E", space)
        g = parse_polynomial("E*p1", space)
        assert poisson(f, g) == parse_polynomial("m*E", space)

    def test_bracket_against_oracle_randomized(self):
        rng = random.Random(20240811)
        qs, ps, _ = sympy_space(3)
        for _ in range(25):
            f = random_polynomial(rng, SPACE3, max_terms=3, max_degree=3)
            g = random_polynomial(rng, SPACE3, max_terms=3, max_degree=3)
            from oracles import to_sympy

            oracle = sympy_bracket(to_sympy(f), to_sympy(g), qs, ps)
            assert same_polynomial(poisson(f, g), oracle)


POLYS2 = polynomial_strategy(PhaseSpace(2), max_degree=3, max_terms=3)
POLYS3 = polynomial_strategy(PhaseSpace(3), max_degree=4, max_terms=3)
SCALARS = st.fractions(min_value=Fraction(-6), max_value=Fraction(6), max_denominator=3)


class TestRingLaws:
    @given(POLYS2, POLYS2, POLYS2)
    def test_associativity_and_commutativity(self, f, g, h):
        assert (f + g) + h == f + (g + h)
        assert f + g == g + f
        assert (f * g) * h == f * (g * h)
        assert f * g == g * f

    @given(POLYS2, POLYS2, POLYS2)
    def test_distributivity(self, f, g, h):
        assert f * (g + h) == f * g + f * h


class TestBracketLaws:
    @given(POLYS3, POLYS3)
    def test_antisymmetry(self, f, g):
        assert poisson(f, g) == -poisson(g, f)

    @given(POLYS3, POLYS3, POLYS3, SCALARS)
    def test_bilinearity(self, f, g, h, r):
        assert poisson(f + g, h) == poisson(f, h) + poisson(g, h)
        assert poisson(f.scale(r), h) == poisson(f, h).scale(r)

    @given(POLYS3, POLYS3, POLYS3)
    def test_leibniz(self, f, g, h):
        assert poisson(f, g * h) == g * poisson(f, h) + poisson(f, g) * h

    @settings(max_examples=60)
    @given(POLYS3, POLYS3, POLYS3)
    def test_jacobi(self, f, g, h):
        total = (
            poisson(f, poisson(g, h))
            + poisson(g, poisson(h, f))
            + poisson(h, poisson(f, g))
        )
        assert total.is_zero()


class TestRoundTrip:
    @given(POLYS2)
    def test_parse_print_identity(self, f):
        assert parse_polynomial(str(f), f.space) == f

    @given(POLYS2)
    def test_print_parse_print_fixed_point(self, f):
        text = str(f)
        assert str(parse_polynomial(text, f.space)) == text
