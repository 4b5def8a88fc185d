"""
Varieties of representations given by identities y*v(x1,...,xn) = 0, and the
verbal submodules X*(V, A) they cut out of truncated pairs.
"""
import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .algebra_core import FieldSpec, GradedSubspace, SparseMatrix, Subspace, Vector, axpy
from .exceptions import HypothesisError, UnvalidatedVarietyError, ZeroElementError
from .expression_parser import parse_identity, render_identity
from .free_assoc import AssocElement, linearize, multihomogeneous_components

if TYPE_CHECKING:
    from .pairs import RepPair


@dataclass(frozen=True)
class RepIdentity:
    """The identity y*body = 0; body is a polynomial in the variables v1..vk."""
    body: AssocElement

    def __post_init__(self):
        if not self.body:
            raise ZeroElementError("A representation identity needs a nonzero body")

    @classmethod
    def parse(cls, text: str, field_spec: FieldSpec) -> "RepIdentity":
        return cls(parse_identity(text, field_spec))

    @property
    def variables(self) -> int:
        return self.body.algebra.gens

    def is_multihomogeneous(self) -> bool:
        return len(multihomogeneous_components(self.body)) == 1

    def __str__(self) -> str:
        return render_identity(self.body)


@dataclass(frozen=True)
class VarietySpec:
    identities: Tuple[RepIdentity, ...] = ()
    multihom_validated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "identities", tuple(self.identities))
        if self.multihom_validated and not all(i.is_multihomogeneous() for i in self.identities):
            raise HypothesisError("A validated variety spec may hold multihomogeneous identities only")

    @classmethod
    def parse(cls, texts: Iterable[str], field_spec: FieldSpec) -> "VarietySpec":
        return cls(tuple(RepIdentity.parse(t, field_spec) for t in texts))

    def render(self) -> List[str]:
        return [str(i) for i in self.identities]


def trivial_action_variety(field_spec: FieldSpec) -> VarietySpec:
    """The variety of representations in which the algebra acts as zero (y*v1 = 0)."""
    return validate_multihomogeneous(VarietySpec.parse(["y*v1"], field_spec))


def multihom_decompose(identity: RepIdentity) -> List[RepIdentity]:
    return [RepIdentity(component) for component in multihomogeneous_components(identity.body)]


def validate_multihomogeneous(spec: VarietySpec) -> VarietySpec:
    identities: List[RepIdentity] = []
    for identity in spec.identities:
        for part in multihom_decompose(identity):
            if all(part.body != known.body for known in identities):
                identities.append(part)
    return VarietySpec(tuple(identities), multihom_validated=True)


def _substitution_tuples(degrees: Sequence[int], multiplicities: Sequence[int], budget: int) -> Iterator[Tuple[int, ...]]:
    """Index tuples into a list of operators of the given degrees, within a degree budget."""
    def extend(prefix: Tuple[int, ...], remaining_budget: int) -> Iterator[Tuple[int, ...]]:
        position = len(prefix)
        if position == len(multiplicities):
            yield prefix
            return
        multiplicity = multiplicities[position]
        rest = sum(multiplicities[position + 1:])
        for i, deg in enumerate(degrees):
            if deg * multiplicity + rest <= remaining_budget:
                yield from extend(prefix + (i,), remaining_budget - deg * multiplicity)
    yield from extend((), budget)


def identity_bodies(spec: VarietySpec) -> List[AssocElement]:
    """Each validated identity together with its full linearization."""
    bodies: List[AssocElement] = []
    for identity in spec.identities:
        bodies.append(identity.body)
        linear, _ = linearize(identity.body)
        if linear is not identity.body:
            bodies.append(linear)
    return bodies


def evaluate_identity(m: Vector, body: AssocElement, operators: Sequence[SparseMatrix]) -> Vector:
    """m * body(a_1, ..., a_k) where a_j acts through operators[j]."""
    prefixes: Dict[Tuple[int, ...], Vector] = {(): m}

    def value_of(word: Tuple[int, ...]) -> Vector:
        if word not in prefixes:
            prefixes[word] = operators[word[-1]].vecmul(value_of(word[:-1]))
        return prefixes[word]

    result: Vector = {}
    for word, coefficient in body.terms.items():
        axpy(result, coefficient, value_of(word))
    return result


def identity_values(pair: "RepPair", spec: VarietySpec, subalgebra: Sequence[AssocElement],
                    module_vectors: Optional[Sequence[Vector]] = None) -> List[Vector]:
    """
    Values m*v(a_1..a_k) with a_j over the subalgebra basis and m over the module
    basis, or over the given homogeneous module vectors.
    """
    if not spec.multihom_validated:
        raise UnvalidatedVarietyError()
    operators = [pair.operator_matrix(a) for a in subalgebra]
    degrees = []
    for a in subalgebra:
        if not a.is_homogeneous() or a.degree < 1:
            raise HypothesisError(f"Subalgebra basis element {a} must be homogeneous of positive degree")
        degrees.append(a.degree)
    if module_vectors is None:
        module_vectors = [{i: pair.field.one} for i in range(pair.dim)]
    values: List[Vector] = []
    for body in identity_bodies(spec):
        multiplicities = [0] * body.algebra.gens
        for letter in next(iter(body.terms)):
            multiplicities[letter] += 1
        for m in module_vectors:
            budget = pair.degree - _vector_degree(pair, m)
            for choice in _substitution_tuples(degrees, multiplicities, budget):
                value = evaluate_identity(m, body, [operators[i] for i in choice])
                if value:
                    values.append(value)
    return values


def _vector_degree(pair: "RepPair", m: Vector) -> int:
    parts = pair.split_by_degree(m)
    if len(parts) > 1:
        raise HypothesisError("Module vectors substituted into identities must be homogeneous")
    return next(iter(parts), 0)


def graded_closure(pair: "RepPair", seeds: Iterable[Vector],
                   actors: Sequence[Tuple[SparseMatrix, int]]) -> GradedSubspace:
    """
    Smallest graded subspace containing the seeds and stable under the actors,
    each a (matrix, degree) pair of positive degree.
    """
    if any(degree < 1 for _, degree in actors):
        raise HypothesisError("Closure actors must raise degree")
    by_degree: List[List[Vector]] = [[] for _ in range(pair.degree + 1)]
    for seed in seeds:
        for d, component in pair.split_by_degree(seed).items():
            by_degree[d].append(component)
    components: List[Subspace] = []
    for d in range(pair.degree + 1):
        vectors = list(by_degree[d])
        for matrix, degree in actors:
            if d - degree >= 0:
                vectors.extend(matrix.vecmul(row) for row in components[d - degree].basis)
        components.append(Subspace.span(pair.field, pair.dim, vectors))
    return GradedSubspace(tuple(components))


def verbal_submodule(pair: "RepPair", spec: VarietySpec, subalgebra: Sequence[AssocElement],
                     closure_actors: Optional[Sequence[AssocElement]] = None) -> GradedSubspace:
    """
    X*(V, A): the submodule generated by all values of the identities, with A the
    subalgebra whose homogeneous basis is given as operators on the pair. The
    closure runs over every generator of the pair unless closure_actors is given.
    """
    if not spec.multihom_validated:
        raise UnvalidatedVarietyError()
    values = identity_values(pair, spec, subalgebra)
    if closure_actors is None:
        actors = pair.generator_actors()
    else:
        actors = [pair.operator_actor(a) for a in closure_actors]
    submodule = graded_closure(pair, values, actors)
    logging.debug(f"Verbal submodule from {len(values)} values: dims {submodule.dims()}")
    return submodule
