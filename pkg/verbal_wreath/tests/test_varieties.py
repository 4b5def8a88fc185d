import pytest
import random
import sys
import os

sys.path.insert(0, os.path.abspath(
    os.path.join(os.path.dirname(__file__), "..")))

# autopep8: off
from src.algebra_core import FieldSpec
from src.exceptions import HypothesisError, UnvalidatedVarietyError
from src.free_assoc import FreeAssocAlgebra
from src.pairs import regular_pair
from src.varieties import (RepIdentity, VarietySpec, evaluate_identity, identity_bodies,
                           multihom_decompose, trivial_action_variety, validate_multihomogeneous,
                           verbal_submodule)
# autopep8: on


@pytest.fixture
def Q():
    yield FieldSpec.rationals()


@pytest.fixture
def regular(Q):
    yield regular_pair(FreeAssocAlgebra.standard(Q, 2, 3))


def lie_operators(pair):
    return [pair.lie.basis_element_assoc(i) for i in range(pair.lie.dim)]


class TestVarietySpec:
    def test_parse_and_render(self, Q):
        spec = VarietySpec.parse(["y*v1*v2", "y*[v1,v2]"], Q)
        assert spec.render() == ["y*v1*v2", "y*(-v2*v1 + v1*v2)"]
        assert not spec.multihom_validated

    def test_multihomogeneous_split(self, Q):
        identity = RepIdentity.parse("y*(v1*v2 + v1)", Q)
        assert not identity.is_multihomogeneous()
        parts = multihom_decompose(identity)
        assert [str(p) for p in parts] == ["y*v1", "y*v1*v2"]

    def test_validation_dedupes(self, Q):
        spec = validate_multihomogeneous(VarietySpec.parse(["y*v1*v2", "y*v1*v2"], Q))
        assert spec.multihom_validated
        assert spec.render() == ["y*v1*v2"]

    def test_validated_flag_is_checked(self, Q):
        with pytest.raises(HypothesisError):
            VarietySpec((RepIdentity.parse("y*(v1 + v1*v1)", Q),), multihom_validated=True)

    def test_bodies_include_linearization(self, Q):
        spec = validate_multihomogeneous(VarietySpec.parse(["y*v1*v1"], Q))
        bodies = identity_bodies(spec)
        assert len(bodies) == 2
        assert bodies[1].terms == {(0, 1): 1, (1, 0): 1}


class TestVerbalSubmodule:
    def test_unvalidated_spec_rejected(self, Q, regular):
        spec = VarietySpec.parse(["y*v1*v2"], Q)
        with pytest.raises(UnvalidatedVarietyError):
            verbal_submodule(regular, spec, lie_operators(regular))

    def test_trivial_action_kills_positive_degrees(self, Q, regular):
        submodule = verbal_submodule(regular, trivial_action_variety(Q), lie_operators(regular))
        assert submodule.dims() == [0, 2, 4, 8]

    def test_two_step_nilpotent_action(self, Q, regular):
        spec = validate_multihomogeneous(VarietySpec.parse(["y*v1*v2"], Q))
        submodule = verbal_submodule(regular, spec, lie_operators(regular))
        assert submodule.dims() == [0, 0, 4, 8]

    def test_commuting_action(self, Q, regular):
        # y*[v1,v2] = 0 identifies words up to reordering
        spec = validate_multihomogeneous(VarietySpec.parse(["y*[v1,v2]"], Q))
        submodule = verbal_submodule(regular, spec, lie_operators(regular))
        assert submodule.dims() == [0, 0, 1, 4]

    def test_components_are_homogeneous(self, Q, regular):
        spec = validate_multihomogeneous(VarietySpec.parse(["y*v1*v1"], Q))
        submodule = verbal_submodule(regular, spec, lie_operators(regular))
        for d, component in enumerate(submodule.components):
            for row in component.basis:
                assert set(regular.split_by_degree(row)) == {d}

    def test_values_at_random_elements_land_inside(self, Q, regular):
        spec = validate_multihomogeneous(VarietySpec.parse(["y*v1*v1"], Q))
        submodule = verbal_submodule(regular, spec, lie_operators(regular))
        F = regular.algebra
        rng = random.Random(5)
        for _ in range(25):
            a = rng.randint(-3, 3) * F.generator(0) + rng.randint(-3, 3) * F.generator(1)
            m = regular.basis_vector(rng.randrange(3))
            assert submodule.member(regular.act(m, a * a))

    def test_subalgebra_must_be_homogeneous(self, Q, regular):
        spec = validate_multihomogeneous(VarietySpec.parse(["y*v1"], Q))
        F = regular.algebra
        with pytest.raises(HypothesisError):
            verbal_submodule(regular, spec, [F.generator(0) + F.generator(0) * F.generator(1)])


class TestEvaluateIdentity:
    def test_evaluates_words_in_order(self, Q, regular):
        body = RepIdentity.parse("y*v1*v2", Q).body
        F = regular.algebra
        x1 = regular.operator_matrix(F.generator(0))
        x2 = regular.operator_matrix(F.generator(1))
        value = evaluate_identity(regular.cyclic, body, [x2, x1])
        assert value == {F.word_index[(1, 0)]: 1}
