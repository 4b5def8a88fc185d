import pytest
import sys
import os
from fractions import Fraction

sys.path.insert(0, os.path.abspath(
    os.path.join(os.path.dirname(__file__), "..")))

# autopep8: off
from src.algebra_core import FieldSpec
from src.exceptions import (InvalidNumberError, ParseError, UnexpectedEndOfInputError,
                            UnexpectedTokenError, UnknownSymbolError)
from src.expression_parser import (parse_assoc, parse_identity, parse_lie, parse_lie_identity,
                                   render_identity)
from src.free_assoc import FreeAssocAlgebra
from src.free_lie import FreeLieAlgebra
# autopep8: on


@pytest.fixture
def F():
    yield FreeAssocAlgebra.standard(FieldSpec.rationals(), 2, 3)


@pytest.fixture
def L():
    yield FreeLieAlgebra.standard(FieldSpec.rationals(), 2, 3)


class TestParseAssoc:
    def test_sum_of_products(self, F):
        x1, x2 = F.generator(0), F.generator(1)
        assert parse_assoc("3*x1*x2 + x2", F) == 3 * (x1 * x2) + x2

    def test_bracket_is_commutator(self, F):
        x1, x2 = F.generator(0), F.generator(1)
        assert parse_assoc("[x1, x2]", F) == x1 * x2 - x2 * x1

    def test_fractions_and_signs(self, F):
        value = parse_assoc("-1/2*x1 - (x2 - x1)", F)
        assert value.terms == {(0,): Fraction(1, 2), (1,): -1}

    def test_prime_field_coefficients(self):
        F7 = FreeAssocAlgebra.standard(FieldSpec.prime(7), 1, 2)
        assert parse_assoc("8*x1", F7) == F7.generator(0)
        assert parse_assoc("1/2*x1", F7).terms[(0,)] == 4

    def test_non_invertible_denominator(self):
        F7 = FreeAssocAlgebra.standard(FieldSpec.prime(7), 1, 2)
        with pytest.raises(InvalidNumberError):
            parse_assoc("1/7*x1", F7)

    def test_zero_denominator(self, F):
        with pytest.raises(InvalidNumberError):
            parse_assoc("1/0", F)

    def test_unknown_symbol_position(self, F):
        with pytest.raises(UnknownSymbolError) as e:
            parse_assoc("x1 + x3", F)
        assert (e.value.line, e.value.column) == (1, 6)

    def test_unbalanced(self, F):
        with pytest.raises(UnexpectedEndOfInputError):
            parse_assoc("[x1, x2", F)
        with pytest.raises(UnexpectedTokenError):
            parse_assoc("[x1 x2]", F)
        with pytest.raises(ParseError):
            parse_assoc("x1 )", F)


class TestParseLie:
    def test_lie_polynomial(self, L):
        value = parse_lie("[x1,[x1,x2]] - 2*[x1,x2]", L)
        assert value.coords == {3: 1, 2: -2}

    def test_non_lie_rejected(self, L):
        with pytest.raises(ParseError):
            parse_lie("x1*x2", L)


class TestIdentities:
    def test_identity_body(self):
        body = parse_identity("y*v1*v2", FieldSpec.rationals())
        assert body.algebra.names == ("v1", "v2")
        assert body.terms == {(0, 1): 1}
        assert render_identity(body) == "y*v1*v2"

    def test_identity_with_several_terms(self):
        body = parse_identity("y*[v1,v2]", FieldSpec.rationals())
        assert body.terms == {(0, 1): 1, (1, 0): -1}
        assert render_identity(body) == "y*(-v2*v1 + v1*v2)"

    def test_identity_needs_module_variable_first(self):
        with pytest.raises(ParseError):
            parse_identity("v1*y", FieldSpec.rationals())
        with pytest.raises(ParseError):
            parse_identity("v1", FieldSpec.rationals())

    def test_identity_variables_are_contiguous(self):
        with pytest.raises(ParseError):
            parse_identity("y*v2", FieldSpec.rationals())
        with pytest.raises(UnknownSymbolError):
            parse_identity("y*x1", FieldSpec.rationals())

    def test_zero_identity(self):
        with pytest.raises(ParseError):
            parse_identity("y*v1 - y*v1", FieldSpec.rationals())

    def test_lie_identity(self):
        identity = parse_lie_identity("[[v1,v2],v3]", FieldSpec.rationals())
        assert identity.algebra.gens == 3
        assert identity.degrees() == [3]
