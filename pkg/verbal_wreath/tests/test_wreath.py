import pytest
import random
import sys
import os

sys.path.insert(0, os.path.abspath(
    os.path.join(os.path.dirname(__file__), "..")))

# autopep8: off
from src.algebra_core import FieldSpec
from src.exceptions import HypothesisError
from src.extensions import FiniteLieAlgebra
from src.varieties import VarietySpec, validate_multihomogeneous, verbal_submodule
from src.wreath import action_table, check_definition1, corrupt_action, wreath_action, wreath_build
# autopep8: on


@pytest.fixture
def Q():
    yield FieldSpec.rationals()


@pytest.fixture
def X2(Q):
    yield validate_multihomogeneous(VarietySpec.parse(["y*v1*v2"], Q))


@pytest.fixture
def top(Q):
    yield FiniteLieAlgebra(Q, 2, names=("e1", "e2"))


@pytest.fixture
def wp(X2, top):
    yield wreath_build(X2, 2, top, 3)


class TestWreathBuild:
    def test_dims(self, wp):
        assert wp.envelope.dims() == [1, 2, 3, 4]
        assert wp.module.dims() == [1, 4, 11, 24]
        assert [g.name for g in wp.p_generators[:6]] == ["y1", "y2", "y1e1", "y1e2", "y2e1", "y2e2"]
        assert wp.gamma.names[-2:] == ("e1", "e2")

    def test_base_factor(self, wp):
        base = [i for i, label in enumerate(wp.module.labels) if label.startswith("1|")]
        counts = [0] * 4
        for i in base:
            counts[wp.module.degrees[i]] += 1
        assert counts == [1, 2, 4, 6]

    def test_top_acts_on_both_factors(self, wp):
        module = wp.module
        y1 = module.labels.index("1|y1")
        image = wreath_action(wp, {y1: wp.field.one}, wp.gamma.generator(wp.top_letter(0)))
        assert module.render_vector(image) == "1|y1e1 + e1|y1"

    def test_without_top_algebra(self, Q, X2):
        wp = wreath_build(X2, 2, FiniteLieAlgebra.abelian(Q, 0), 3)
        assert wp.module.dims() == [1, 2, 0, 0]
        assert check_definition1(wp).passed

    def test_one_generator_over_a_line(self, Q, X2):
        wp = wreath_build(X2, 1, FiniteLieAlgebra.abelian(Q, 1), 2)
        assert [g.name for g in wp.p_generators] == ["y1", "y1g1"]
        assert wp.envelope.dims() == [1, 1, 1]
        assert wp.module.dims() == [1, 2, 3]

    def test_top_action_stops_at_the_truncation(self, Q, X2):
        wp = wreath_build(X2, 1, FiniteLieAlgebra.abelian(Q, 1), 2)
        y1, y1g1 = wp.p_letter[(0, ())], wp.p_letter[(0, (0,))]
        assert wp.p_action_of_top(y1, 0) == {y1g1: Q.one}
        assert wp.p_action_of_top(y1g1, 0) == {}
        assert check_definition1(wp).passed

    def test_trivial_base_leaves_the_envelope(self, Q, top):
        S = validate_multihomogeneous(VarietySpec.parse(["y*v1"], Q))
        wp = wreath_build(S, 2, top, 3)
        assert wp.module.dims() == wp.envelope.dims() == [1, 2, 3, 4]
        assert all(label.endswith("|1") for label in wp.module.labels)

    def test_top_element(self, wp):
        element = wp.top_element({0: wp.field.one, 1: wp.field.coerce(2)})
        assert element.terms == {(wp.top_letter(0),): 1, (wp.top_letter(1),): 2}
        assert element.degree == 1

    def test_top_above_truncation(self, Q, X2):
        with pytest.raises(HypothesisError):
            wreath_build(X2, 1, FiniteLieAlgebra(Q, 1, degrees=(3,)), 2)


class TestWreathLaws:
    def test_grading_and_relations(self, wp):
        for pair in (wp.tensor, wp.module):
            pair.check_grading()
            pair.check_representation_law()

    def test_random_relation_triples(self, wp):
        module = wp.module
        rng = random.Random(23)
        for _ in range(200):
            relation = rng.choice(wp.module.relations)
            m = module.basis_vector(rng.randrange(module.dim))
            combo = wp.gamma.element({(k,): c for k, c in relation.combo.items()})
            assert module.law_violations(wp.gamma.generator(relation.left),
                                         wp.gamma.generator(relation.right), combo, [m]) == []

    def test_verbal_submodule_is_derivation_invariant(self, wp, X2):
        p_only = verbal_submodule(wp.tensor, X2, wp.p_basis,
                                  [wp.gamma.generator(q) for q in range(wp.p_count)])
        assert p_only.dims() == wp.projection.submodule.dims()


class TestDefinitionChecks:
    def test_conditions_hold(self, wp):
        report = check_definition1(wp)
        assert report.passed
        assert set(report.conditions) == {"subpair", "generation", "cyclic", "variety"}

    def test_corrupted_action_fails_variety(self, wp):
        broken = corrupt_action(wp, "y1", "1|y1", "1|y1e1")
        report = check_definition1(broken)
        assert not report.conditions["variety"]
        assert not report.passed


class TestActionTable:
    def test_deterministic(self, wp, X2, top):
        table = action_table(wp.module)
        assert table.splitlines()[0] == "# basis (40): dims [1, 4, 11, 24]"
        assert "1|1 . y1 = 1|y1" in table.splitlines()
        assert table == action_table(wreath_build(X2, 2, top, 3).module)
