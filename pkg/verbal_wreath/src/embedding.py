"""
Verification pipeline for the embedding of (F / F X*(F1, M), L) into the wreath
product of the free X-pair on y_1..y_n with L/M, through x_i -> y_i + x_i-bar.

F is the truncated free associative algebra on x_1..x_n, L the free Lie algebra
inside it, M a graded ideal of L and F1 the subalgebra of F generated by M.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra_core import (FieldSpec, GradedSubspace, Scalar, SparseMatrix, Subspace, Vector,
                           _echelon_rows, axpy)
from .exceptions import (HypothesisError, InternalConsistencyError, InvalidScenarioError,
                         UnvalidatedVarietyError)
from .expression_parser import parse_lie
from .extensions import FiniteLieAlgebra, GModule, ext_bracket, semidirect_build
from .free_assoc import AssocElement
from .free_lie import (FreeLieAlgebra, LieElement, LieVarietySpec, bracket, ideal_closure, lie_to_assoc,
                       standard_factorization, theta_verbal_ideal, witt_dimension)
from .pairs import (PairHom, RepPair, extend_hom, free_cyclic_pair, graded_dims, quotient_pair, regular_pair,
                    subpair_generated)
from .pbw import UniversalEnvelope
from .varieties import VarietySpec, graded_closure, identity_values, verbal_submodule
from .wreath import WreathProduct, wreath_build


@dataclass(frozen=True, eq=False)
class LieQuotient:
    """B = L/M with basis e_alpha = images of the Lyndon basis elements outside the pivots of M."""
    lie: FreeLieAlgebra
    ideal: GradedSubspace
    columns: Tuple[int, ...]
    algebra: FiniteLieAlgebra

    @cached_property
    def position(self) -> Dict[int, int]:
        return {column: alpha for alpha, column in enumerate(self.columns)}

    def reduce(self, v: Mapping[int, Scalar]) -> Vector:
        """Coordinates in B of the image of a Lie element given in Lyndon coordinates."""
        reduced = self.ideal.reduce(v)
        return {self.position[i]: value for i, value in reduced.items()}


def lie_quotient(lie: FreeLieAlgebra, ideal: GradedSubspace) -> LieQuotient:
    columns = tuple(i for i in range(lie.dim) if i not in ideal.pivots)
    position = {column: alpha for alpha, column in enumerate(columns)}
    structure = {}
    for a in range(len(columns)):
        for b in range(a + 1, len(columns)):
            reduced = ideal.reduce(lie.bracket_basis(columns[a], columns[b]))
            value = {position[i]: c for i, c in reduced.items()}
            if value:
                structure[(a, b)] = value
    algebra = FiniteLieAlgebra(
        lie.field, len(columns), structure,
        names=tuple(f"e{alpha + 1}" for alpha in range(len(columns))),
        degrees=tuple(lie.basis_degrees[c] for c in columns),
    )
    return LieQuotient(lie, ideal, columns, algebra)


@dataclass(frozen=True, eq=False)
class EmbeddingScenario:
    """
    One instance of the embedding: exactly one of theta (M = Theta(L)) or
    ideal_generators (M = the ideal they generate) describes M.
    """
    lie: FreeLieAlgebra
    x_spec: VarietySpec
    theta: Optional[LieVarietySpec] = None
    ideal_generators: Optional[Tuple[LieElement, ...]] = None
    name: str = "scenario"

    def __post_init__(self):
        if self.lie.gens < 1:
            raise InvalidScenarioError("A scenario needs at least one generator")
        if self.lie.degree < 1:
            raise InvalidScenarioError("Truncation degree must be at least 1")
        if not self.x_spec.multihom_validated:
            raise UnvalidatedVarietyError()
        if (self.theta is None) == (self.ideal_generators is None):
            raise InvalidScenarioError("Give exactly one of variety_Theta or ideal_generators")
        if self.theta is not None and self.theta.has_linear_identity():
            raise InvalidScenarioError(
                "Theta with a degree-1 identity forces M = L; give M = L through ideal_generators")

    @classmethod
    def build(cls, field_spec: FieldSpec, gens: int, degree: int, x_spec: VarietySpec,
              theta: Optional[LieVarietySpec] = None, ideal_generators: Optional[Sequence[str]] = None,
              name: str = "scenario") -> "EmbeddingScenario":
        if gens < 1 or degree < 1:
            raise InvalidScenarioError("generators and degree must both be at least 1")
        lie = FreeLieAlgebra.standard(field_spec, gens, degree)
        generators = None
        if ideal_generators is not None:
            generators = tuple(parse_lie(text, lie) for text in ideal_generators)
        return cls(lie, x_spec, theta, generators, name)

    @property
    def field(self) -> FieldSpec:
        return self.lie.field

    @property
    def gens(self) -> int:
        return self.lie.gens

    @property
    def degree(self) -> int:
        return self.lie.degree

    @cached_property
    def ideal(self) -> GradedSubspace:
        """M up to degree D in Lyndon coordinates."""
        if self.theta is not None:
            return theta_verbal_ideal(self.theta, self.lie)
        return ideal_closure(self.lie, self.ideal_generators)

    @cached_property
    def quotient(self) -> LieQuotient:
        return lie_quotient(self.lie, self.ideal)

    @cached_property
    def ideal_operators(self) -> Tuple[AssocElement, ...]:
        return tuple(lie_to_assoc(LieElement(self.lie, row)) for row in self.ideal.basis())

    @cached_property
    def domain(self) -> RepPair:
        return build_domain_pair(self)

    @cached_property
    def codomain(self) -> WreathProduct:
        return build_codomain(self)

    @cached_property
    def phi(self) -> PairHom:
        return phi_map(self, self.domain, self.codomain)


def estimate_basis_size(gens: int, degree: int) -> int:
    """
    Upper bound on the module bases built for a scenario: the words of F plus the
    tensor basis U(B) (x) U(P) in the worst case M = 0.
    """
    lie_dims = [witt_dimension(gens, d) for d in range(degree + 1)]
    envelope = [1] + [0] * degree
    for d in range(1, degree + 1):
        for _ in range(lie_dims[d]):
            for k in range(d, degree + 1):
                envelope[k] += envelope[k - d]
    p_counts = [0] + [gens * envelope[w - 1] for w in range(1, degree + 1)]
    w_dims = [1] + [0] * degree
    for d in range(1, degree + 1):
        w_dims[d] = sum(p_counts[w] * w_dims[d - w] for w in range(1, d + 1))
    cells = sum(envelope[k] * w_dims[d - k] for d in range(degree + 1) for k in range(d + 1))
    words = sum(gens ** d for d in range(degree + 1))
    return words + cells


def build_domain_pair(s: EmbeddingScenario) -> RepPair:
    """(F / F X*(F1, M), L): the regular pair modulo the values of X on M, closed under all of F."""
    regular = regular_pair(s.lie.assoc)
    submodule = verbal_submodule(regular, s.x_spec, list(s.ideal_operators))
    domain = quotient_pair(regular, submodule)
    logging.info(f"[{s.name}] domain dims {domain.dims()} (M dims {s.ideal.dims()})")
    return domain


def domain_dims_by_decomposition(s: EmbeddingScenario) -> List[int]:
    """
    Domain dims through F = sum e_I F1: PBW monomial counts of a complement of M
    times the dims of F1 / X*(F1, M).
    """
    regular = regular_pair(s.lie.assoc)
    actors = [regular.operator_actor(a) for a in s.ideal_operators]
    f1 = graded_closure(regular, [regular.cyclic], actors)
    values = identity_values(regular, s.x_spec, list(s.ideal_operators), f1.basis())
    verbal = graded_closure(regular, values, actors)
    f1_quotient = [a - b for a, b in zip(f1.dims(), verbal.dims())]
    pbw = UniversalEnvelope(s.quotient.algebra, s.degree).dims()
    return [sum(pbw[k] * f1_quotient[d - k] for k in range(d + 1)) for d in range(s.degree + 1)]


def build_codomain(s: EmbeddingScenario) -> WreathProduct:
    return wreath_build(s.x_spec, s.gens, s.quotient.algebra, s.degree)


def generator_images(s: EmbeddingScenario, cod: WreathProduct) -> List[AssocElement]:
    """x_i -> y_i + x_i-bar as elements of U(Gamma)."""
    images = []
    for i in range(s.gens):
        x_bar = s.quotient.reduce(dict(s.lie.generator(i).coords))
        images.append(cod.gamma.generator(cod.base_letter(i)) + cod.top_element(x_bar))
    return images


def phi_map(s: EmbeddingScenario, dom: RepPair, cod: WreathProduct) -> PairHom:
    hom = extend_hom(dom, cod.module, generator_images(s, cod))
    logging.info(f"[{s.name}] phi ranks by degree {hom.rank_by_degree()}")
    return hom


@dataclass
class DegreeRow:
    degree: int
    domain_dim: int
    codomain_dim: int
    rank: int
    kernel_dim: int


@dataclass
class MonomorphismReport:
    rows: List[DegreeRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.kernel_dim == 0 for row in self.rows)

    def kernel_dims(self) -> List[int]:
        return [row.kernel_dim for row in self.rows]


def verify_monomorphism(phi: PairHom) -> MonomorphismReport:
    ranks = phi.rank_by_degree()
    domain_dims = phi.domain.dims()
    codomain_dims = phi.codomain.dims()
    report = MonomorphismReport()
    for d, rank in enumerate(ranks):
        report.rows.append(DegreeRow(d, domain_dims[d], codomain_dims[d], rank, domain_dims[d] - rank))
    return report


def zero_image(phi: PairHom, domain_label: str) -> PairHom:
    """A copy of phi sending one domain basis vector to zero."""
    row = phi.domain.labels.index(domain_label)
    entries = {key: value for key, value in phi.module_map.entries.items() if key[0] != row}
    matrix = SparseMatrix(phi.module_map.field, phi.module_map.rows, phi.module_map.cols, entries)
    return PairHom(phi.domain, phi.codomain, phi.algebra_images, matrix)


@dataclass
class Lemma3Row:
    degree: int
    ideal_dim: int
    square_dim: int
    quotient_dim: int
    rank: int

    @property
    def kernel_dim(self) -> int:
        return self.quotient_dim - self.rank


@dataclass
class Lemma3Report:
    rows: List[Lemma3Row] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.kernel_dim == 0 for row in self.rows)


def lemma3_check(s: EmbeddingScenario) -> Lemma3Report:
    """
    M/M^2 -> P/P^2 induced by chi: L -> P/P^2 x| L/M, x_i -> (y_i, x_i-bar).
    P/P^2 is spanned by the free generators of P with B acting through U(B).
    """
    cod = s.codomain
    B = s.quotient.algebra
    actions = []
    for alpha in range(B.dim):
        rows = [cod.p_action_of_top(q, alpha) for q in range(cod.p_count)]
        actions.append(SparseMatrix.from_row_vectors(s.field, rows, cod.p_count))
    extension = semidirect_build(GModule(B, cod.p_count, tuple(actions)))

    chi: List[Tuple[Vector, Vector]] = []
    for word in s.lie.basis:
        if len(word) == 1:
            i = word[0]
            chi.append(({cod.base_letter(i): s.field.one},
                        s.quotient.reduce(dict(s.lie.generator(i).coords))))
        else:
            u, v = standard_factorization(word)
            chi.append(ext_bracket(extension, chi[s.lie.index[u]], chi[s.lie.index[v]]))

    ideal_rows = s.ideal.basis()
    ideal_elements = [LieElement(s.lie, row) for row in ideal_rows]
    square = Subspace.span(s.field, s.lie.dim, [
        dict(bracket(ideal_elements[a], ideal_elements[b]).coords)
        for a in range(len(ideal_elements)) for b in range(a + 1, len(ideal_elements))])

    report = Lemma3Report()
    for d in range(1, s.degree + 1):
        component = s.ideal.components[d]
        images = []
        for row in component.basis:
            a_part: Vector = {}
            g_part: Vector = {}
            for i, c in row.items():
                axpy(a_part, c, chi[i][0])
                axpy(g_part, c, chi[i][1])
            if g_part:
                raise InternalConsistencyError("chi does not send M into P/P^2")
            images.append(a_part)
        square_dim = sum(1 for row in square.basis if s.lie.basis_degrees[min(row)] == d)
        rank = len(_echelon_rows(s.field, images))
        report.rows.append(Lemma3Row(d, component.dim, square_dim, component.dim - square_dim, rank))
    logging.info(f"[{s.name}] ranks of M/M^2 -> P/P^2 {[r.rank for r in report.rows]}")
    return report


@dataclass
class PropositionReport:
    subpair_dims: List[int]
    free_dims: List[int]

    @property
    def passed(self) -> bool:
        return self.subpair_dims == self.free_dims


def proposition_check(spec: VarietySpec, gens: int, Y: Sequence, D: int,
                      field_spec: Optional[FieldSpec] = None) -> PropositionReport:
    """
    For Y independent modulo L^2, the subpair of the free X-pair generated by Y and
    the cyclic vector has the dims of the free X-pair of rank |Y|.
    """
    field_spec = field_spec or FieldSpec.rationals()
    pair = free_cyclic_pair(spec, gens, D, field_spec)
    elements = []
    for y in Y:
        if isinstance(y, str):
            y = parse_lie(y, pair.lie)
        elif y.algebra.assoc != pair.algebra:
            raise HypothesisError(f"{y} lives over other generators")
        else:
            y = LieElement(pair.lie, dict(y.coords))
        if y.degrees() != [1]:
            raise HypothesisError(f"Proposition inputs must be homogeneous of degree 1, got {y}")
        elements.append(y)
    if len(_echelon_rows(field_spec, [dict(y.coords) for y in elements])) != len(elements):
        raise HypothesisError("Y is not linearly independent modulo L^2")
    sub = subpair_generated(pair, elements, [pair.cyclic])
    free = free_cyclic_pair(spec, len(elements), D, field_spec)
    report = PropositionReport(graded_dims(sub), graded_dims(free))
    logging.info(f"Proposition: subpair dims {report.subpair_dims}, free dims {report.free_dims}")
    return report


@dataclass
class Corollary1Report:
    image_dims: List[int]
    domain_dims: List[int]

    @property
    def passed(self) -> bool:
        return self.image_dims == self.domain_dims


def corollary1_dims(s: EmbeddingScenario) -> Corollary1Report:
    """The subpair generated by the y_i + x_i-bar and the cyclic vector has the domain's dims."""
    cod = s.codomain
    image = subpair_generated(cod.module, generator_images(s, cod), [cod.module.cyclic])
    report = Corollary1Report(image.dims(), s.domain.dims())
    monomorphism = verify_monomorphism(s.phi)
    ranks = [row.rank for row in monomorphism.rows]
    if image.dims() != ranks or report.passed != monomorphism.passed:
        raise InternalConsistencyError(
            f"Image dims {image.dims()} disagree with phi ranks {ranks}")
    return report
