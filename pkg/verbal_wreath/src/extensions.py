"""
Abelian extensions of finite-dimensional Lie algebras.

An extension of a G-module A by G lives on A x G with the bracket

    [(a1, g1), (a2, g2)] = (a1.g2 - a2.g1 + f(g1, g2), [g1, g2])

where a.g is the right action of G on A and f is the factor set. Elements are
pairs of sparse vectors (A-coordinates, G-coordinates).
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra_core import (FieldSpec, Scalar, SparseMatrix, Subspace, Vector, add_vectors,
                           axpy, scale_vector, solve, sub_vectors)
from .exceptions import (DimensionMismatchError, HypothesisError,
                         InternalConsistencyError, RepresentationLawError, SplittingError)

ExtElement = Tuple[Vector, Vector]


@dataclass(frozen=True, eq=False)
class FiniteLieAlgebra:
    """Structure constants [e_i, e_j] for i < j; unlisted brackets vanish."""
    field: FieldSpec
    dim: int
    structure: Mapping[Tuple[int, int], Vector] = field(default_factory=dict)
    names: Tuple[str, ...] = ()
    degrees: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(f"g{i + 1}" for i in range(self.dim)))
        if len(self.names) != self.dim:
            raise DimensionMismatchError(self.dim, len(self.names))
        if self.degrees is not None and len(self.degrees) != self.dim:
            raise DimensionMismatchError(self.dim, len(self.degrees))
        for (i, j), value in self.structure.items():
            if not 0 <= i < j < self.dim:
                raise ValueError(f"Structure constants are keyed by i < j < {self.dim}, got {(i, j)}")
            if any(not 0 <= k < self.dim for k in value):
                raise DimensionMismatchError(self.dim, max(value) + 1)

    @classmethod
    def abelian(cls, field_spec: FieldSpec, dim: int) -> "FiniteLieAlgebra":
        return cls(field_spec, dim)

    @classmethod
    def heisenberg(cls, field_spec: FieldSpec) -> "FiniteLieAlgebra":
        return cls(field_spec, 3, {(0, 1): {2: field_spec.one}})

    @classmethod
    def nonabelian_2d(cls, field_spec: FieldSpec) -> "FiniteLieAlgebra":
        """[e1, e2] = e2."""
        return cls(field_spec, 2, {(0, 1): {1: field_spec.one}})

    @classmethod
    def sl2(cls, field_spec: FieldSpec) -> "FiniteLieAlgebra":
        """Basis e, f, h with [e,f] = h, [e,h] = -2e, [f,h] = 2f."""
        two = field_spec.coerce(2)
        return cls(field_spec, 3, {(0, 1): {2: field_spec.one}, (0, 2): {0: -two}, (1, 2): {1: two}},
                   names=("e", "f", "h"))

    def bracket_basis(self, i: int, j: int) -> Vector:
        if i == j:
            return {}
        if i < j:
            return self.structure.get((i, j), {})
        return scale_vector(-self.field.one, self.structure.get((j, i), {}))

    def bracket(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vector:
        result: Vector = {}
        for i, ci in u.items():
            for j, cj in v.items():
                if i != j:
                    axpy(result, ci * cj, self.bracket_basis(i, j))
        return result

    def basis_vector(self, i: int) -> Vector:
        return {i: self.field.one}

    def jacobi_violations(self) -> List[Tuple[int, int, int]]:
        violations = []
        for i, j, k in combinations(range(self.dim), 3):
            x, y, z = self.basis_vector(i), self.basis_vector(j), self.basis_vector(k)
            total = add_vectors(add_vectors(self.bracket(self.bracket(x, y), z),
                                            self.bracket(self.bracket(y, z), x)),
                                self.bracket(self.bracket(z, x), y))
            if total:
                violations.append((i, j, k))
        return violations

    def is_lie(self) -> bool:
        return not self.jacobi_violations()


@dataclass(frozen=True, eq=False)
class GModule:
    """A right G-module: a.g = a * actions[g] for basis elements g of G."""
    algebra: FiniteLieAlgebra
    dim: int
    actions: Tuple[SparseMatrix, ...]

    def __post_init__(self):
        if len(self.actions) != self.algebra.dim:
            raise DimensionMismatchError(self.algebra.dim, len(self.actions))
        for matrix in self.actions:
            if (matrix.rows, matrix.cols) != (self.dim, self.dim):
                raise DimensionMismatchError((self.dim, self.dim), (matrix.rows, matrix.cols))

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @classmethod
    def trivial(cls, algebra: FiniteLieAlgebra, dim: int) -> "GModule":
        zero = SparseMatrix.zero(algebra.field, dim, dim)
        return cls(algebra, dim, tuple(zero for _ in range(algebra.dim)))

    @classmethod
    def adjoint(cls, algebra: FiniteLieAlgebra) -> "GModule":
        """a.g = [a, g]."""
        actions = []
        for g in range(algebra.dim):
            rows = [algebra.bracket_basis(a, g) for a in range(algebra.dim)]
            actions.append(SparseMatrix.from_row_vectors(algebra.field, rows, algebra.dim))
        return cls(algebra, algebra.dim, tuple(actions))

    def act(self, a: Mapping[int, Scalar], g: Mapping[int, Scalar]) -> Vector:
        result: Vector = {}
        for i, c in g.items():
            axpy(result, c, self.actions[i].vecmul(a))
        return result

    def law_violations(self) -> List[Tuple[int, int]]:
        """Basis pairs (i, j) with (a.g_i).g_j - (a.g_j).g_i != a.[g_i, g_j] for some basis a."""
        violations = []
        for i, j in combinations(range(self.algebra.dim), 2):
            commutator = self.algebra.bracket_basis(i, j)
            for k in range(self.dim):
                a = {k: self.field.one}
                lhs = sub_vectors(self.actions[j].vecmul(self.actions[i].vecmul(a)),
                                  self.actions[i].vecmul(self.actions[j].vecmul(a)))
                if sub_vectors(lhs, self.act(a, commutator)):
                    violations.append((i, j))
                    break
        return violations


@dataclass(frozen=True, eq=False)
class FactorSet:
    """Alternating bilinear f: G x G -> A, given on basis pairs i < j."""
    values: Mapping[Tuple[int, int], Vector] = field(default_factory=dict)

    def __post_init__(self):
        for (i, j) in self.values:
            if i >= j:
                raise ValueError(f"Factor set values are keyed by i < j, got {(i, j)}")

    @classmethod
    def zero(cls) -> "FactorSet":
        return cls({})

    def value(self, i: int, j: int) -> Vector:
        if i == j:
            return {}
        if i < j:
            return dict(self.values.get((i, j), {}))
        return {k: -v for k, v in self.values.get((j, i), {}).items()}

    def evaluate(self, g1: Mapping[int, Scalar], g2: Mapping[int, Scalar]) -> Vector:
        result: Vector = {}
        for i, ci in g1.items():
            for j, cj in g2.items():
                if i != j:
                    axpy(result, ci * cj, self.value(i, j))
        return result

    def is_zero(self) -> bool:
        return not any(self.values.values())


@dataclass(frozen=True, eq=False)
class Extension:
    module: GModule
    factor_set: FactorSet

    @property
    def algebra(self) -> FiniteLieAlgebra:
        return self.module.algebra

    @property
    def field(self) -> FieldSpec:
        return self.module.field

    @property
    def dim(self) -> int:
        return self.module.dim + self.algebra.dim

    def basis(self) -> List[ExtElement]:
        one = self.field.one
        return ([({k: one}, {}) for k in range(self.module.dim)]
                + [({}, {i: one}) for i in range(self.algebra.dim)])

    def bracket(self, x: ExtElement, y: ExtElement) -> ExtElement:
        return ext_bracket(self, x, y)

    def as_lie_algebra(self, names: Optional[Sequence[str]] = None) -> FiniteLieAlgebra:
        """The same bracket on one basis: A-coordinates first, then G."""
        shift = self.module.dim
        basis = self.basis()
        structure = {}
        for i, j in combinations(range(self.dim), 2):
            a, g = ext_bracket(self, basis[i], basis[j])
            value = dict(a)
            value.update({shift + k: v for k, v in g.items()})
            if value:
                structure[(i, j)] = value
        if names is None:
            names = tuple(f"a{k + 1}" for k in range(shift)) + self.algebra.names
        return FiniteLieAlgebra(self.field, self.dim, structure, tuple(names))


@dataclass(frozen=True, eq=False)
class Retraction:
    """rho: G -> A; row i of the matrix is g_i^rho."""
    matrix: SparseMatrix

    def apply(self, g: Mapping[int, Scalar]) -> Vector:
        return self.matrix.vecmul(g)


def ext_bracket(e: Extension, x: ExtElement, y: ExtElement) -> ExtElement:
    a1, g1 = x
    a2, g2 = y
    a = sub_vectors(e.module.act(a1, g2), e.module.act(a2, g1))
    a = add_vectors(a, e.factor_set.evaluate(g1, g2))
    return a, e.algebra.bracket(g1, g2)


def _jacobi_sum(e: Extension, x: ExtElement, y: ExtElement, z: ExtElement) -> ExtElement:
    terms = [ext_bracket(e, ext_bracket(e, x, y), z),
             ext_bracket(e, ext_bracket(e, y, z), x),
             ext_bracket(e, ext_bracket(e, z, x), y)]
    a: Vector = {}
    g: Vector = {}
    for ta, tg in terms:
        a = add_vectors(a, ta)
        g = add_vectors(g, tg)
    return a, g


def cocycle_check(f: FactorSet, A: GModule) -> bool:
    """Jacobi identity of the extension bracket on every basis triple of A x G."""
    e = Extension(A, f)
    basis = e.basis()
    for x, y, z in combinations(basis, 3):
        a, g = _jacobi_sum(e, x, y, z)
        if a or g:
            return False
    return True


def cocycle_identity_holds(f: FactorSet, A: GModule) -> bool:
    """
    The expanded condition: A is a G-module, G is a Lie algebra, and
    f(g1,g2).g3 + cyclic = f(g1,[g2,g3]) + cyclic on basis triples.
    """
    G = A.algebra
    if A.law_violations() or G.jacobi_violations():
        return False
    for i, j, k in combinations(range(G.dim), 3):
        lhs: Vector = {}
        rhs: Vector = {}
        for p, q, r in ((i, j, k), (j, k, i), (k, i, j)):
            lhs = add_vectors(lhs, A.act(f.value(p, q), G.basis_vector(r)))
            rhs = add_vectors(rhs, f.evaluate(G.basis_vector(p), G.bracket_basis(q, r)))
        if sub_vectors(lhs, rhs):
            return False
    return True


def coboundary(rho: Retraction, A: GModule) -> FactorSet:
    """f(g1, g2) = g1^rho.g2 - g2^rho.g1 - [g1, g2]^rho."""
    G = A.algebra
    values = {}
    for i, j in combinations(range(G.dim), 2):
        value = sub_vectors(A.act(rho.apply(G.basis_vector(i)), G.basis_vector(j)),
                            A.act(rho.apply(G.basis_vector(j)), G.basis_vector(i)))
        value = sub_vectors(value, rho.apply(G.bracket_basis(i, j)))
        if value:
            values[(i, j)] = value
    return FactorSet(values)


def splitting_violations(f: FactorSet, A: GModule, rho: Retraction) -> List[Tuple[int, int]]:
    expected = coboundary(rho, A)
    return [(i, j) for i, j in combinations(range(A.algebra.dim), 2)
            if sub_vectors(f.value(i, j), expected.value(i, j))]


def splitting_check(f: FactorSet, A: GModule) -> Optional[Retraction]:
    """
    Solves f(g1, g2) = g1^rho.g2 - g2^rho.g1 - [g1, g2]^rho for rho as one linear
    system; unknown rho[i][l] sits at column i * dim A + l.
    """
    G = A.algebra
    n, m = G.dim, A.dim
    entries: Dict[Tuple[int, int], Scalar] = {}
    target: Vector = {}

    def add(row: int, col: int, value: Scalar) -> None:
        total = entries.get((row, col), 0) + value
        if total:
            entries[(row, col)] = total
        else:
            entries.pop((row, col), None)

    pairs = list(combinations(range(n), 2))
    for p, (i, j) in enumerate(pairs):
        for l in range(m):
            for k, value in A.actions[j].row(l).items():
                add(p * m + k, i * m + l, value)
            for k, value in A.actions[i].row(l).items():
                add(p * m + k, j * m + l, -value)
        for g, c in G.bracket_basis(i, j).items():
            for k in range(m):
                add(p * m + k, g * m + k, -c)
        for k, value in f.value(i, j).items():
            target[p * m + k] = value
    system = SparseMatrix(A.field, len(pairs) * m, n * m, entries)
    solution = solve(system, target)
    if solution is None:
        logging.debug("Splitting system is infeasible")
        return None
    rows = [{l: solution[i * m + l] for l in range(m) if solution.get(i * m + l)} for i in range(n)]
    return Retraction(SparseMatrix.from_row_vectors(A.field, rows, m))


def semidirect_build(A: GModule) -> Extension:
    """A x G with zero factor set; A must be a G-module over a Lie algebra G."""
    if A.algebra.jacobi_violations():
        raise RepresentationLawError("The acting algebra fails the Jacobi identity")
    violations = A.law_violations()
    if violations:
        i, j = violations[0]
        raise RepresentationLawError(
            f"Module law fails for g{i + 1}, g{j + 1}: (a.g1).g2 - (a.g2).g1 != a.[g1,g2]")
    return Extension(A, FactorSet.zero())


@dataclass(frozen=True, eq=False)
class ExtensionIsomorphism:
    """mu: (a, g) -> (a + g^rho, g) from an extension onto the semidirect product."""
    source: Extension
    target: Extension
    retraction: Retraction

    def apply(self, x: ExtElement) -> ExtElement:
        a, g = x
        return add_vectors(a, self.retraction.apply(g)), dict(g)

    def inverse(self, x: ExtElement) -> ExtElement:
        a, g = x
        return sub_vectors(a, self.retraction.apply(g)), dict(g)

    def bracket_failures(self) -> List[Tuple[int, int]]:
        basis = self.source.basis()
        failures = []
        for i, j in combinations(range(len(basis)), 2):
            lhs = self.apply(ext_bracket(self.source, basis[i], basis[j]))
            rhs = ext_bracket(self.target, self.apply(basis[i]), self.apply(basis[j]))
            if sub_vectors(lhs[0], rhs[0]) or sub_vectors(lhs[1], rhs[1]):
                failures.append((i, j))
        return failures

    def inverse_failures(self) -> List[int]:
        failures = []
        for i, x in enumerate(self.source.basis()):
            for composed in (self.inverse(self.apply(x)), self.apply(self.inverse(x))):
                if sub_vectors(composed[0], x[0]) or sub_vectors(composed[1], x[1]):
                    failures.append(i)
                    break
        return failures


def mu_map(e: Extension, rho: Retraction) -> ExtensionIsomorphism:
    violations = splitting_violations(e.factor_set, e.module, rho)
    if violations:
        raise SplittingError(violations[0])
    iso = ExtensionIsomorphism(e, semidirect_build(e.module), rho)
    if iso.bracket_failures() or iso.inverse_failures():
        raise InternalConsistencyError("mu fails to be a bijective homomorphism despite the splitting equation")
    return iso


@dataclass(frozen=True, eq=False)
class ComplementSplitting:
    """An abelian ideal A of B with a linear complement sigma(G), G = B/A."""
    extension: Extension
    sigma: Tuple[Vector, ...]
    ideal_basis: Tuple[Vector, ...]


def factor_set_from_complement(B: FiniteLieAlgebra, ideal_basis: Sequence[Mapping[int, Scalar]],
                               complement: Sequence[Mapping[int, Scalar]]) -> ComplementSplitting:
    """
    f(g1, g2) = [g1^sigma, g2^sigma] - [g1, g2]^sigma for the complement sigma, with
    A acted on by a.g = [a, g^sigma] and G = B/A.
    """
    ideal_basis = [dict(a) for a in ideal_basis]
    complement = [dict(c) for c in complement]
    m, n = len(ideal_basis), len(complement)
    if m + n != B.dim:
        raise DimensionMismatchError(B.dim, m + n)
    columns = ideal_basis + complement
    change = SparseMatrix(B.field, B.dim, B.dim,
                          {(r, c): v for c, column in enumerate(columns) for r, v in column.items() if v})
    if Subspace.span(B.field, B.dim, columns).dim != B.dim:
        raise HypothesisError("Ideal basis and complement do not form a basis of B")

    def decompose(v: Vector) -> Tuple[Vector, Vector]:
        x = solve(change, v)
        return ({k: c for k, c in x.items() if k < m},
                {k - m: c for k, c in x.items() if k >= m})

    for a, b in combinations(ideal_basis, 2):
        if B.bracket(a, b):
            raise HypothesisError("The ideal is not abelian")
    structure = {}
    values = {}
    for i, j in combinations(range(n), 2):
        a_part, g_part = decompose(B.bracket(complement[i], complement[j]))
        if g_part:
            structure[(i, j)] = g_part
        if a_part:
            values[(i, j)] = a_part
    G = FiniteLieAlgebra(B.field, n, structure)
    actions = []
    for i in range(n):
        rows = []
        for a in ideal_basis:
            a_part, g_part = decompose(B.bracket(a, complement[i]))
            if g_part:
                raise HypothesisError("The given subspace is not an ideal")
            rows.append(a_part)
        actions.append(SparseMatrix.from_row_vectors(B.field, rows, m))
    module = GModule(G, m, tuple(actions))
    return ComplementSplitting(Extension(module, FactorSet(values)), tuple(complement), tuple(ideal_basis))
