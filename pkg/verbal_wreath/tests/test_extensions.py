import pytest
import random
import sys
import os
from fractions import Fraction

sys.path.insert(0, os.path.abspath(
    os.path.join(os.path.dirname(__file__), "..")))

# autopep8: off
from src.algebra_core import FieldSpec, SparseMatrix
from src.exceptions import HypothesisError, RepresentationLawError, SplittingError
from src.extensions import (Extension, FactorSet, FiniteLieAlgebra, GModule, Retraction, coboundary,
                            cocycle_check, cocycle_identity_holds, factor_set_from_complement, mu_map,
                            semidirect_build, splitting_check, splitting_violations)
# autopep8: on


@pytest.fixture
def Q():
    yield FieldSpec.rationals()


@pytest.fixture
def sl2_adjoint(Q):
    yield GModule.adjoint(FiniteLieAlgebra.sl2(Q))


def random_matrix(rng, field_spec, n, m):
    rows = [{l: field_spec.coerce(rng.randint(-3, 3)) for l in range(m)} for _ in range(n)]
    rows = [{l: v for l, v in row.items() if v} for row in rows]
    return SparseMatrix.from_row_vectors(field_spec, rows, m)


def random_factor_set(rng, n, m):
    values = {}
    for i in range(n):
        for j in range(i + 1, n):
            value = {k: Fraction(rng.randint(-2, 2)) for k in range(m)}
            values[(i, j)] = {k: v for k, v in value.items() if v}
    return FactorSet(values)


def filiform(field_spec):
    """[e1, e2] = e3, [e1, e3] = e4."""
    one = field_spec.one
    return FiniteLieAlgebra(field_spec, 4, {(0, 1): {2: one}, (0, 2): {3: one}}, degrees=(1, 1, 2, 3))


def abelian_on_plane(field_spec):
    one = field_spec.one
    actions = (SparseMatrix(field_spec, 2, 2, {(0, 1): one}), SparseMatrix.zero(field_spec, 2, 2))
    return GModule(FiniteLieAlgebra.abelian(field_spec, 2), 2, actions)


MODULES = {
    "sl2_adjoint": lambda F: GModule.adjoint(FiniteLieAlgebra.sl2(F)),
    "abelian_on_plane": abelian_on_plane,
    "heisenberg_adjoint": lambda F: GModule.adjoint(FiniteLieAlgebra.heisenberg(F)),
    "heisenberg_trivial": lambda F: GModule.trivial(FiniteLieAlgebra.heisenberg(F), 2),
    "filiform_adjoint": lambda F: GModule.adjoint(filiform(F)),
}


class TestFiniteLieAlgebras:
    def test_standard_algebras_are_lie(self, Q):
        for algebra in (FiniteLieAlgebra.sl2(Q), FiniteLieAlgebra.heisenberg(Q),
                        FiniteLieAlgebra.nonabelian_2d(Q), FiniteLieAlgebra.abelian(Q, 4)):
            assert algebra.is_lie()

    def test_jacobi_violation_detected(self, Q):
        one = Q.one
        broken = FiniteLieAlgebra(Q, 3, {(0, 1): {0: one}, (1, 2): {1: one}, (0, 2): {2: one}})
        assert broken.jacobi_violations() == [(0, 1, 2)]

    def test_structure_keys(self, Q):
        with pytest.raises(ValueError):
            FiniteLieAlgebra(Q, 2, {(1, 0): {0: Q.one}})

    def test_adjoint_module_law(self, sl2_adjoint):
        assert sl2_adjoint.law_violations() == []


class TestSplitting:
    @pytest.mark.parametrize("module_name,field_text", [
        ("sl2_adjoint", "Q"),
        ("sl2_adjoint", "Fp:7"),
        ("abelian_on_plane", "Q"),
        ("heisenberg_adjoint", "Q"),
        ("heisenberg_trivial", "Fp:5"),
        ("filiform_adjoint", "Q"),
        ("filiform_adjoint", "Fp:3"),
    ])
    def test_random_coboundaries_split(self, module_name, field_text):
        field_spec = FieldSpec.parse(field_text)
        module = MODULES[module_name](field_spec)
        assert module.law_violations() == []
        n, m = module.algebra.dim, module.dim
        rng = random.Random(5)
        for _ in range(30):
            rho = Retraction(random_matrix(rng, field_spec, n, m))
            f = coboundary(rho, module)
            assert cocycle_check(f, module)
            found = splitting_check(f, module)
            assert found is not None
            assert splitting_violations(f, module, found) == []
            iso = mu_map(Extension(module, f), found)
            assert iso.bracket_failures() == []
            assert iso.target.factor_set.is_zero()

    def test_heisenberg_does_not_split(self, Q):
        module = GModule.trivial(FiniteLieAlgebra.abelian(Q, 2), 1)
        f = FactorSet({(0, 1): {0: Q.one}})
        assert cocycle_check(f, module)
        assert splitting_check(f, module) is None
        assert Extension(module, f).as_lie_algebra().is_lie()

    def test_wrong_retraction_rejected(self, Q, sl2_adjoint):
        f = coboundary(Retraction(SparseMatrix.zero(Q, 3, 3)), sl2_adjoint)
        assert f.is_zero()
        identity = Retraction(SparseMatrix.from_dense(Q, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
        with pytest.raises(SplittingError):
            mu_map(Extension(sl2_adjoint, f), identity)

    def test_cocycle_conditions_agree(self, sl2_adjoint):
        rng = random.Random(17)
        for _ in range(40):
            f = random_factor_set(rng, 3, 3)
            assert cocycle_check(f, sl2_adjoint) == cocycle_identity_holds(f, sl2_adjoint)
            g = coboundary(Retraction(random_matrix(rng, sl2_adjoint.field, 3, 3)), sl2_adjoint)
            assert cocycle_identity_holds(g, sl2_adjoint)

    def test_non_cocycle(self, Q):
        one = Q.one
        G = FiniteLieAlgebra.abelian(Q, 3)
        module = GModule(G, 1, (SparseMatrix(Q, 1, 1, {(0, 0): one}),
                                SparseMatrix.zero(Q, 1, 1), SparseMatrix.zero(Q, 1, 1)))
        f = FactorSet({(1, 2): {0: one}})
        assert not cocycle_check(f, module)
        assert not cocycle_identity_holds(f, module)


class TestComplements:
    def test_heisenberg_over_its_centre(self, Q):
        B = FiniteLieAlgebra.heisenberg(Q)
        one = Q.one
        split = factor_set_from_complement(B, [{2: one}], [{0: one}, {1: one}])
        e = split.extension
        assert e.factor_set.value(0, 1) == {0: 1}
        assert e.algebra.structure == {}
        assert splitting_check(e.factor_set, e.module) is None

    def test_nonabelian_2d(self, Q):
        B = FiniteLieAlgebra.nonabelian_2d(Q)
        one = Q.one
        split = factor_set_from_complement(B, [{1: one}], [{0: one}])
        assert split.extension.module.actions[0].row(0) == {0: -1}
        assert split.extension.factor_set.is_zero()

    def test_non_abelian_ideal(self, Q):
        B = FiniteLieAlgebra.sl2(Q)
        one = Q.one
        with pytest.raises(HypothesisError):
            factor_set_from_complement(B, [{0: one}, {1: one}], [{2: one}])

    def test_semidirect_rejects_module_law_failure(self, Q):
        G = FiniteLieAlgebra.heisenberg(Q)
        zero = SparseMatrix.zero(Q, 1, 1)
        module = GModule(G, 1, (zero, zero, SparseMatrix(Q, 1, 1, {(0, 0): Q.one})))
        with pytest.raises(RepresentationLawError):
            semidirect_build(module)
