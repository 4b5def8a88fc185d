import pytest
import random
import sys
import os
from itertools import product

sys.path.insert(0, os.path.abspath(
    os.path.join(os.path.dirname(__file__), "..")))

# autopep8: off
from sympy.ntheory import mobius

from src.algebra_core import FieldSpec, Subspace
from src.exceptions import HypothesisError, NotALieElementError
from src.expression_parser import parse_lie, parse_lie_identity
from src.free_lie import (FreeLieAlgebra, LieVarietySpec, assoc_to_lie, bracket, ideal_closure,
                          is_lyndon, lie_subalgebra, lie_to_assoc, lyndon_basis, lyndon_words,
                          standard_factorization, theta_verbal_ideal, witt_dimension)
# autopep8: on


@pytest.fixture
def L():
    yield FreeLieAlgebra.standard(FieldSpec.rationals(), 2, 3)


def necklace_count(gens, d):
    total = 0
    for k in range(1, d + 1):
        if d % k == 0:
            total += mobius(k) * gens ** (d // k)
    return total // d


def brute_force_dim(lie, d):
    """Rank of all left-normed brackets of d generators, expanded in the envelope."""
    F = lie.assoc
    rows = []
    for word in product(range(lie.gens), repeat=d):
        value = F.generator(word[0])
        for letter in word[1:]:
            x = F.generator(letter)
            value = value * x - x * value
        rows.append({F.word_index[w]: c for w, c in value.terms.items()})
    return Subspace.span(lie.field, len(F.basis_words), rows).dim


class TestLyndonWords:
    def test_enumeration(self):
        assert list(lyndon_words(2, 3)) == [(0,), (0, 0, 1), (0, 1), (0, 1, 1), (1,)]
        assert lyndon_basis(2, 4) == [(0, 0, 0, 1), (0, 0, 1, 1), (0, 1, 1, 1)]

    def test_is_lyndon(self):
        assert is_lyndon((0, 1))
        assert not is_lyndon((1, 0))
        assert not is_lyndon((0, 0))
        assert not is_lyndon(())

    def test_standard_factorization(self):
        assert standard_factorization((0, 0, 1)) == ((0,), (0, 1))
        assert standard_factorization((0, 1, 1)) == ((0, 1), (1,))
        assert standard_factorization((0, 1, 0, 1, 1)) == ((0, 1), (0, 1, 1))
        with pytest.raises(ValueError):
            standard_factorization((1, 0))

    @pytest.mark.parametrize("gens", [1, 2, 3])
    def test_witt_formula(self, gens):
        for d in range(1, 6):
            assert witt_dimension(gens, d) == necklace_count(gens, d)
            assert len(lyndon_basis(gens, d)) == witt_dimension(gens, d)

    @pytest.mark.parametrize("gens", [1, 2, 3])
    def test_dims_match_bracket_expansion_rank(self, gens):
        lie = FreeLieAlgebra.standard(FieldSpec.rationals(), gens, 5)
        dims = lie.dims()
        for d in range(1, 6):
            assert dims[d] == brute_force_dim(lie, d)


class TestFreeLieAlgebra:
    def test_basis_order_and_rendering(self, L):
        assert L.basis == ((0,), (1,), (0, 1), (0, 0, 1), (0, 1, 1))
        assert [L.render_basis(i) for i in range(L.dim)] == [
            "x1", "x2", "[x1,x2]", "[x1,[x1,x2]]", "[[x1,x2],x2]"]
        assert L.dims() == [0, 2, 1, 2]

    def test_bracket_of_generators(self, L):
        x1, x2 = L.generator(0), L.generator(1)
        assert bracket(x1, x2) == L.basis_element(2)
        assert bracket(x2, x1) == -L.basis_element(2)
        assert bracket(x1, bracket(x1, x2)) == L.basis_element(3)
        assert str(bracket(bracket(x1, x2), x2)) == "[[x1,x2],x2]"

    def test_bracket_truncates(self, L):
        c = L.basis_element(2)
        assert not bracket(c, L.basis_element(3))

    def test_round_trip_through_envelope(self, L):
        rng = random.Random(3)
        for _ in range(20):
            x = L.element({i: rng.randint(-3, 3) for i in range(L.dim)})
            assert assoc_to_lie(L, lie_to_assoc(x)) == x

    def test_non_lie_rejected(self, L):
        F = L.assoc
        with pytest.raises(NotALieElementError):
            assoc_to_lie(L, F.generator(0) * F.generator(1))

    def test_antisymmetry_and_jacobi(self):
        lie = FreeLieAlgebra.standard(FieldSpec.rationals(), 3, 4)
        rng = random.Random(11)
        low = lie.indices_of_degree(1) + lie.indices_of_degree(2)
        for _ in range(30):
            a, b, c = (lie.element({rng.choice(low): rng.randint(1, 3)}) for _ in range(3))
            assert bracket(a, b) == -bracket(b, a)
            jacobi = bracket(bracket(a, b), c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b)
            assert not jacobi

    def test_homogeneous_components(self, L):
        x = L.generator(0) + L.basis_element(2)
        assert x.degrees() == [1, 2]
        assert not x.is_homogeneous()
        assert x.homogeneous_component(2) == L.basis_element(2)
        assert len(x.grade_split()) == 4


class TestVerbalIdeals:
    def test_abelian_ideal_is_derived_algebra(self, L):
        theta = LieVarietySpec((parse_lie_identity("[v1,v2]", L.field),))
        assert theta_verbal_ideal(theta, L).dims() == [0, 0, 1, 2]

    def test_nilpotent_class_two(self, L):
        theta = LieVarietySpec((parse_lie_identity("[[v1,v2],v3]", L.field),))
        assert theta_verbal_ideal(theta, L).dims() == [0, 0, 0, 2]

    def test_metabelian_is_zero_below_degree_four(self):
        lie = FreeLieAlgebra.standard(FieldSpec.rationals(), 2, 4)
        theta = LieVarietySpec((parse_lie_identity("[[v1,v2],[v3,v4]]", lie.field),))
        assert theta_verbal_ideal(theta, lie).dims() == [0, 0, 0, 0, 0]

    def test_engel_identity(self, L):
        # not multilinear; its values still span all of L^3
        theta = LieVarietySpec((parse_lie_identity("[[v2,v1],v1]", L.field),))
        assert theta_verbal_ideal(theta, L).dims() == [0, 0, 0, 2]

    def test_ideal_closure_matches_verbal_ideal(self, L):
        generated = ideal_closure(L, [parse_lie("[x1,x2]", L)])
        assert generated.dims() == [0, 0, 1, 2]

    def test_ideal_closure_rejects_mixed_degrees(self, L):
        with pytest.raises(HypothesisError):
            ideal_closure(L, [parse_lie("x1 + [x1,x2]", L)])

    def test_linear_identity_detected(self, L):
        assert LieVarietySpec((parse_lie_identity("v1", L.field),)).has_linear_identity()
        assert not LieVarietySpec((parse_lie_identity("[v1,v2]", L.field),)).has_linear_identity()

    def test_lie_subalgebra(self, L):
        assert lie_subalgebra(L, [parse_lie("x1 + x2", L)]).dim == 1
        assert lie_subalgebra(L, [L.generator(0), L.generator(1)]).dim == L.dim
        assert lie_subalgebra(L, [L.generator(0), parse_lie("[x1,x2]", L)]).dim == 3
