"""
Truncated representation pairs (V, A).

A pair stores a graded module basis (global indices, degree-major) and one
matrix per generator of the acting algebra. Matrices act on row vectors from the
right, matching the convention m.(ab) = (m.a).b.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra_core import (FieldSpec, GradedSubspace, Scalar, SparseMatrix, Vector,
                           _echelon_rows, axpy, sub_vectors)
from .exceptions import (ClosureViolationError, DimensionMismatchError, HypothesisError,
                         MorphismError, RepresentationLawError)
from .free_assoc import AssocElement, FreeAssocAlgebra
from .free_lie import FreeLieAlgebra, LieElement, lie_subalgebra, lie_to_assoc
from .varieties import VarietySpec, graded_closure, verbal_submodule

Operator = Union[AssocElement, LieElement]


@dataclass(frozen=True)
class BracketRelation:
    """[g_left, g_right] = sum combo[k] g_k among the acting generators."""
    left: int
    right: int
    combo: Mapping[int, Scalar]


@dataclass(frozen=True, eq=False)
class RepPair:
    algebra: FreeAssocAlgebra
    labels: Tuple[str, ...]
    degrees: Tuple[int, ...]
    actions: Tuple[SparseMatrix, ...]
    cyclic: Optional[Vector] = None
    relations: Tuple[BracketRelation, ...] = ()

    def __post_init__(self):
        if len(self.labels) != len(self.degrees):
            raise DimensionMismatchError(len(self.degrees), len(self.labels))
        if list(self.degrees) != sorted(self.degrees):
            raise ValueError("Module basis must be ordered by degree")
        if self.degrees and self.degrees[-1] > self.degree:
            raise ValueError(f"Module basis exceeds truncation degree {self.degree}")
        if len(self.actions) != self.algebra.gens:
            raise DimensionMismatchError(self.algebra.gens, len(self.actions))
        for matrix in self.actions:
            if (matrix.rows, matrix.cols) != (self.dim, self.dim):
                raise DimensionMismatchError((self.dim, self.dim), (matrix.rows, matrix.cols))

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @property
    def degree(self) -> int:
        return self.algebra.degree

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def lie(self) -> FreeLieAlgebra:
        """The free Lie algebra on the acting generators (mapping onto the acting algebra)."""
        return FreeLieAlgebra(self.algebra)

    def dims(self) -> List[int]:
        counts = [0] * (self.degree + 1)
        for d in self.degrees:
            counts[d] += 1
        return counts

    def indices_of_degree(self, d: int) -> List[int]:
        return [i for i, deg in enumerate(self.degrees) if deg == d]

    def split_by_degree(self, v: Mapping[int, Scalar]) -> Dict[int, Vector]:
        parts: Dict[int, Vector] = {}
        for i, value in v.items():
            parts.setdefault(self.degrees[i], {})[i] = value
        return parts

    def basis_vector(self, i: int) -> Vector:
        return {i: self.field.one}

    def act_generator(self, v: Mapping[int, Scalar], i: int) -> Vector:
        return self.actions[i].vecmul(v)

    def act(self, v: Mapping[int, Scalar], a: Operator) -> Vector:
        """v.a for an element of the acting algebra, given by an associative polynomial in the generators."""
        if isinstance(a, LieElement):
            a = lie_to_assoc(a)
        prefixes: Dict[Tuple[int, ...], Vector] = {(): dict(v)}

        def value_of(word: Tuple[int, ...]) -> Vector:
            if word not in prefixes:
                prefixes[word] = self.actions[word[-1]].vecmul(value_of(word[:-1]))
            return prefixes[word]

        result: Vector = {}
        for word, coefficient in a.terms.items():
            axpy(result, coefficient, value_of(word))
        return result

    @cached_property
    def _operator_cache(self) -> Dict[AssocElement, SparseMatrix]:
        return {}

    def operator_matrix(self, a: Operator) -> SparseMatrix:
        if isinstance(a, LieElement):
            a = lie_to_assoc(a)
        cache = self._operator_cache
        if a not in cache:
            rows = [self.act(self.basis_vector(i), a) for i in range(self.dim)]
            cache[a] = SparseMatrix.from_row_vectors(self.field, rows, self.dim)
        return cache[a]

    def operator_actor(self, a: Operator) -> Tuple[SparseMatrix, int]:
        if isinstance(a, LieElement):
            a = lie_to_assoc(a)
        if not a.is_homogeneous() or a.degree < 1:
            raise HypothesisError(f"Actor {a} must be homogeneous of positive degree")
        return self.operator_matrix(a), a.degree

    def generator_actors(self) -> List[Tuple[SparseMatrix, int]]:
        return list(zip(self.actions, self.algebra.weights))

    def check_grading(self) -> None:
        for g, matrix in enumerate(self.actions):
            weight = self.algebra.weights[g]
            for (r, c) in matrix.entries:
                if self.degrees[c] != self.degrees[r] + weight:
                    raise RepresentationLawError(
                        f"Generator {self.algebra.names[g]} sends {self.labels[r]} outside degree "
                        f"{self.degrees[r] + weight}")

    def law_violations(self, left: Operator, right: Operator, bracket_value: Operator,
                       vectors: Optional[Sequence[Vector]] = None) -> List[int]:
        """Basis indices m with (m.a).b - (m.b).a != m.[a, b]."""
        vectors = vectors if vectors is not None else [self.basis_vector(i) for i in range(self.dim)]
        failures = []
        for position, m in enumerate(vectors):
            lhs = sub_vectors(self.act(self.act(m, left), right), self.act(self.act(m, right), left))
            if sub_vectors(lhs, self.act(m, bracket_value)):
                failures.append(position)
        return failures

    def check_representation_law(self) -> None:
        """Every declared bracket relation among generators holds on every basis vector."""
        for relation in self.relations:
            combo = self.algebra.element({(k,): c for k, c in relation.combo.items()})
            failures = self.law_violations(self.algebra.generator(relation.left),
                                           self.algebra.generator(relation.right), combo)
            if failures:
                names = self.algebra.names
                raise RepresentationLawError(
                    f"[{names[relation.left]},{names[relation.right]}] fails on {self.labels[failures[0]]}")

    def render_vector(self, v: Mapping[int, Scalar]) -> str:
        if not v:
            return "0"
        parts = []
        for i in sorted(v):
            text = self.field.render(v[i])
            parts.append(self.labels[i] if text == "1" else f"{text}*{self.labels[i]}")
        return " + ".join(parts)


def graded_dims(p: RepPair) -> List[int]:
    """Basis vectors of each degree 0..D."""
    return p.dims()


def regular_pair(algebra: FreeAssocAlgebra) -> RepPair:
    """The truncated free associative algebra acting on itself by right multiplication."""
    words = algebra.basis_words
    index = algebra.word_index
    actions = []
    for g in range(algebra.gens):
        entries = {}
        for r, word in enumerate(words):
            target = index.get(word + (g,))
            if target is not None:
                entries[(r, target)] = algebra.field.one
        actions.append(SparseMatrix(algebra.field, len(words), len(words), entries))
    return RepPair(
        algebra=algebra,
        labels=tuple(algebra.render_word(w) for w in words),
        degrees=tuple(algebra.word_degree(w) for w in words),
        actions=tuple(actions),
        cyclic={index[()]: algebra.field.one},
    )


def lie_subalgebra_operators(lie: FreeLieAlgebra, elements: Sequence[LieElement]) -> List[AssocElement]:
    """Homogeneous basis of the Lie subalgebra generated by homogeneous elements, as envelope elements."""
    for e in elements:
        if not e.is_homogeneous():
            raise HypothesisError(f"Generator {e} of a subalgebra must be homogeneous")
    subalgebra = lie_subalgebra(lie, elements)
    return [lie_to_assoc(LieElement(lie, row)) for row in subalgebra.basis]


@dataclass(frozen=True, eq=False)
class QuotientMap:
    """Projection from a pair onto its quotient by a graded submodule."""
    submodule: GradedSubspace
    kept: Tuple[int, ...]

    @cached_property
    def position(self) -> Dict[int, int]:
        return {old: new for new, old in enumerate(self.kept)}

    def apply(self, v: Mapping[int, Scalar]) -> Vector:
        reduced = self.submodule.reduce(v)
        return {self.position[i]: value for i, value in reduced.items()}

    def lift(self, v: Mapping[int, Scalar]) -> Vector:
        return {self.kept[i]: value for i, value in v.items()}


def check_submodule_closed(p: RepPair, s: GradedSubspace) -> None:
    for g, matrix in enumerate(p.actions):
        for row in s.basis():
            if not s.member(matrix.vecmul(row)):
                raise ClosureViolationError(
                    f"Submodule is not stable under {p.algebra.names[g]} (row led by {p.labels[min(row)]})")


def quotient_pair_with_map(p: RepPair, s: GradedSubspace) -> Tuple[RepPair, QuotientMap]:
    check_submodule_closed(p, s)
    kept = tuple(i for i in range(p.dim) if i not in s.pivots)
    projection = QuotientMap(s, kept)
    actions = []
    for matrix in p.actions:
        rows = [projection.apply(matrix.row(old)) for old in kept]
        actions.append(SparseMatrix.from_row_vectors(p.field, rows, len(kept)))
    quotient = RepPair(
        algebra=p.algebra,
        labels=tuple(p.labels[i] for i in kept),
        degrees=tuple(p.degrees[i] for i in kept),
        actions=tuple(actions),
        cyclic=projection.apply(p.cyclic) if p.cyclic is not None else None,
        relations=p.relations,
    )
    logging.debug(f"Quotient dims {quotient.dims()} (from {p.dims()})")
    return quotient, projection


def quotient_pair(p: RepPair, s: GradedSubspace) -> RepPair:
    return quotient_pair_with_map(p, s)[0]


def free_cyclic_pair(spec: VarietySpec, gens: int, D: int, field_spec: Optional[FieldSpec] = None,
                     names: Optional[Sequence[str]] = None) -> RepPair:
    """The truncated free cyclic pair of the variety on the given generators."""
    field_spec = field_spec or FieldSpec.rationals()
    names = tuple(names) if names is not None else tuple(f"x{i + 1}" for i in range(gens))
    regular = regular_pair(FreeAssocAlgebra(field_spec, names, D))
    operators = [regular.lie.basis_element_assoc(i) for i in range(regular.lie.dim)]
    submodule = verbal_submodule(regular, spec, operators)
    pair = quotient_pair(regular, submodule)
    logging.info(f"Free cyclic pair on {gens} generators: dims {pair.dims()}")
    return pair


def subpair_generated(p: RepPair, lie_gens: Sequence[Operator], module_gens: Sequence[Mapping[int, Scalar]],
                      names: Optional[Sequence[str]] = None) -> RepPair:
    """
    The subpair generated by homogeneous elements of the acting algebra and of the
    module. Its acting algebra is presented on the given generators; its module
    basis is the echelon basis of the generated submodule.
    """
    operators = [lie_to_assoc(a) if isinstance(a, LieElement) else a for a in lie_gens]
    actors = [p.operator_actor(a) for a in operators]
    for m in module_gens:
        if len(p.split_by_degree(m)) > 1:
            raise HypothesisError("Module generators of a subpair must be homogeneous")
    submodule = graded_closure(p, [dict(m) for m in module_gens], actors)
    rows = submodule.basis()
    pivots = [min(row) for row in rows]
    coordinate = {pivot: position for position, pivot in enumerate(pivots)}

    def coordinates(v: Vector) -> Vector:
        if not submodule.member(v):
            raise ClosureViolationError("Generated submodule is not stable")
        return {coordinate[i]: value for i, value in v.items() if i in coordinate}

    actions = []
    for matrix, _ in actors:
        images = [coordinates(matrix.vecmul(row)) for row in rows]
        actions.append(SparseMatrix.from_row_vectors(p.field, images, len(rows)))
    names = tuple(names) if names is not None else tuple(f"g{i + 1}" for i in range(len(operators)))
    algebra = FreeAssocAlgebra(p.field, names, p.degree, tuple(degree for _, degree in actors) or None)
    cyclic = coordinates(dict(module_gens[0])) if len(module_gens) == 1 else None
    return RepPair(
        algebra=algebra,
        labels=tuple(p.labels[pivot] for pivot in pivots),
        degrees=tuple(p.degrees[pivot] for pivot in pivots),
        actions=tuple(actions),
        cyclic=cyclic,
    )


@dataclass(frozen=True, eq=False)
class PairHom:
    """module_map sends a row vector v of the domain to v * module_map."""
    domain: RepPair
    codomain: RepPair
    algebra_images: Tuple[AssocElement, ...]
    module_map: SparseMatrix

    def apply(self, v: Mapping[int, Scalar]) -> Vector:
        return self.module_map.vecmul(v)

    def intertwining_failures(self) -> List[Tuple[int, int]]:
        """(basis index, generator) pairs where map(m.x) != map(m).image(x)."""
        failures = []
        for i in range(self.domain.dim):
            m = self.domain.basis_vector(i)
            image = self.apply(m)
            for g, a in enumerate(self.algebra_images):
                lhs = self.apply(self.domain.act_generator(m, g))
                if sub_vectors(lhs, self.codomain.act(image, a)):
                    failures.append((i, g))
        return failures

    def rank_by_degree(self) -> List[int]:
        ranks = []
        for d in range(self.domain.degree + 1):
            rows = [self.module_map.row(i) for i in self.domain.indices_of_degree(d)]
            ranks.append(len(_echelon_rows(self.domain.field, rows)))
        return ranks

    def kernel_by_degree(self) -> List[int]:
        return [dim - rank for dim, rank in zip(self.domain.dims(), self.rank_by_degree())]


def extend_hom(dom: RepPair, codom: RepPair, algebra_images: Sequence[Operator],
               cyclic_image: Optional[Mapping[int, Scalar]] = None) -> PairHom:
    """
    The unique homomorphism of pairs from a cyclic domain sending generator i to
    algebra_images[i] and the cyclic vector to cyclic_image (default: codom's).

    Pairs (u, w) reachable from the cyclic vectors are row-reduced degree by degree;
    a reachable pair (0, w) with w != 0 means the images violate the domain's
    identities.
    """
    if dom.cyclic is None:
        raise HypothesisError("Homomorphisms extend only from cyclic domain pairs")
    if len(algebra_images) != dom.algebra.gens:
        raise DimensionMismatchError(dom.algebra.gens, len(algebra_images))
    images = tuple(lie_to_assoc(a) if isinstance(a, LieElement) else a for a in algebra_images)
    start = dict(cyclic_image if cyclic_image is not None else (codom.cyclic or {}))
    shift = dom.dim
    frontier: List[Tuple[Vector, Vector]] = [(dict(dom.cyclic), start)]
    collected: List[Vector] = []
    steps = 0
    while frontier:
        steps += 1
        if steps > dom.degree + codom.degree + 2:
            raise MorphismError("generator images must have no degree-0 part")
        augmented = []
        for u, w in frontier:
            row = dict(u)
            row.update({shift + j: value for j, value in w.items()})
            augmented.append(row)
        rows = _echelon_rows(dom.field, augmented)
        for row in rows:
            if min(row) >= shift:
                offending = {j - shift: v for j, v in row.items()}
                raise MorphismError(
                    f"a relation of the domain maps to {codom.render_vector(offending)}")
        collected.extend(rows)
        next_frontier = []
        for row in rows:
            u = {i: v for i, v in row.items() if i < shift}
            w = {i - shift: v for i, v in row.items() if i >= shift}
            for g, a in enumerate(images):
                u_next = dom.act_generator(u, g)
                w_next = codom.act(w, a)
                if u_next or w_next:
                    next_frontier.append((u_next, w_next))
        frontier = next_frontier
    rows = _echelon_rows(dom.field, collected)
    for row in rows:
        if min(row) >= shift:
            offending = {j - shift: v for j, v in row.items()}
            raise MorphismError(f"a relation of the domain maps to {codom.render_vector(offending)}")
    images_by_pivot = {min(row): {j - shift: v for j, v in row.items() if j >= shift} for row in rows}
    if len(images_by_pivot) != dom.dim:
        raise HypothesisError("Domain module is not generated by its cyclic vector")
    matrix = SparseMatrix.from_row_vectors(dom.field, [images_by_pivot[i] for i in range(dom.dim)], codom.dim)
    hom = PairHom(dom, codom, images, matrix)
    failures = hom.intertwining_failures()
    if failures:
        i, g = failures[0]
        raise MorphismError(f"intertwining fails on {dom.labels[i]} under {dom.algebra.names[g]}")
    return hom
