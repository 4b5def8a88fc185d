"""
The free Lie algebra on finitely many generators, realized inside the truncated
free associative algebra and coordinatized by the Lyndon basis.

Basis elements are indexed globally, degree-major, lexicographic within a degree.
A Lyndon word w of length > 1 is bracketed as [u, v] where v is its longest
proper Lyndon suffix.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from sympy import divisors, mobius

from .algebra_core import FieldSpec, GradedSubspace, Scalar, Subspace, Vector, axpy
from .exceptions import (AmbientMismatchError, HypothesisError, NotALieElementError,
                         ZeroElementError)
from .free_assoc import (AssocElement, FreeAssocAlgebra, Word, linearize,
                         multihomogeneous_components, substitute)


def lyndon_words(gens: int, max_length: int) -> Iterator[Word]:
    """All Lyndon words of length <= max_length in lexicographic order (Duval)."""
    if gens < 1 or max_length < 1:
        return
    word = [-1]
    while word:
        word[-1] += 1
        yield tuple(word)
        period = len(word)
        while len(word) < max_length:
            word.append(word[len(word) - period])
        while word and word[-1] == gens - 1:
            word.pop()


def witt_dimension(gens: int, d: int) -> int:
    """Dimension of the degree-d component of the free Lie algebra (necklace count)."""
    if d < 1:
        return 0
    total = sum(mobius(k) * gens ** (d // k) for k in divisors(d))
    return int(total) // d


def is_lyndon(word: Word) -> bool:
    word = tuple(word)
    if not word:
        return False
    return all(word < word[i:] + word[:i] for i in range(1, len(word)))


def standard_factorization(word: Word) -> Tuple[Word, Word]:
    if len(word) < 2 or not is_lyndon(word):
        raise ValueError(f"{word} is not a Lyndon word of length > 1")
    for split in range(1, len(word)):
        suffix = word[split:]
        if is_lyndon(suffix):
            return word[:split], suffix
    raise AssertionError("unreachable: a single letter is always Lyndon")


@dataclass(frozen=True, eq=False)
class FreeLieAlgebra:
    assoc: FreeAssocAlgebra

    @classmethod
    def standard(cls, field_spec: FieldSpec, gens: int, degree: int, prefix: str = "x") -> "FreeLieAlgebra":
        return cls(FreeAssocAlgebra.standard(field_spec, gens, degree, prefix))

    @property
    def field(self) -> FieldSpec:
        return self.assoc.field

    @property
    def gens(self) -> int:
        return self.assoc.gens

    @property
    def degree(self) -> int:
        return self.assoc.degree

    @property
    def names(self) -> Tuple[str, ...]:
        return self.assoc.names

    @cached_property
    def basis(self) -> Tuple[Word, ...]:
        words = [w for w in lyndon_words(self.gens, self.degree)
                 if self.assoc.word_degree(w) <= self.degree]
        return tuple(sorted(words, key=self.assoc.word_key))

    @cached_property
    def index(self) -> Dict[Word, int]:
        return {w: i for i, w in enumerate(self.basis)}

    @cached_property
    def basis_degrees(self) -> Tuple[int, ...]:
        return tuple(self.assoc.word_degree(w) for w in self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def lyndon_basis(self, d: int) -> List[Word]:
        return [w for w, deg in zip(self.basis, self.basis_degrees) if deg == d]

    def indices_of_degree(self, d: int) -> List[int]:
        return [i for i, deg in enumerate(self.basis_degrees) if deg == d]

    def dims(self) -> List[int]:
        counts = [0] * (self.degree + 1)
        for deg in self.basis_degrees:
            counts[deg] += 1
        return counts

    @cached_property
    def _expansions(self) -> Tuple[AssocElement, ...]:
        expanded: Dict[Word, AssocElement] = {}
        for word in self.basis:
            if len(word) == 1:
                expanded[word] = self.assoc.generator(word[0])
            else:
                u, v = standard_factorization(word)
                pu, pv = expanded[u], expanded[v]
                expanded[word] = pu * pv - pv * pu
        return tuple(expanded[w] for w in self.basis)

    def basis_element_assoc(self, i: int) -> AssocElement:
        return self._expansions[i]

    def element(self, coords: Mapping[int, object]) -> "LieElement":
        clean: Vector = {}
        for i, value in coords.items():
            if not 0 <= i < self.dim:
                raise AmbientMismatchError(f"Lie coordinate {i} outside basis of size {self.dim}")
            scalar = self.field.coerce(value)
            if scalar:
                clean[i] = scalar
        return LieElement(self, clean)

    def zero(self) -> "LieElement":
        return LieElement(self, {})

    def generator(self, i: int) -> "LieElement":
        return self.element({self.index[(i,)]: 1})

    def basis_element(self, i: int) -> "LieElement":
        return self.element({i: 1})

    def lie_to_assoc(self, x: "LieElement") -> AssocElement:
        return lie_to_assoc(x)

    def assoc_to_lie(self, a: AssocElement) -> "LieElement":
        return assoc_to_lie(self, a)

    @cached_property
    def _bracket_table(self) -> Dict[Tuple[int, int], Vector]:
        return {}

    def bracket_basis(self, i: int, j: int) -> Vector:
        """Lyndon coordinates of [b_i, b_j], memoized."""
        if i == j:
            return {}
        if i > j:
            return {k: -v for k, v in self.bracket_basis(j, i).items()}
        table = self._bracket_table
        if (i, j) not in table:
            if self.basis_degrees[i] + self.basis_degrees[j] > self.degree:
                table[(i, j)] = {}
            else:
                a, b = self._expansions[i], self._expansions[j]
                table[(i, j)] = dict(assoc_to_lie(self, a * b - b * a).coords)
        return table[(i, j)]

    def render_basis(self, i: int) -> str:
        return self._render_word(self.basis[i])

    def _render_word(self, word: Word) -> str:
        if len(word) == 1:
            return self.names[word[0]]
        u, v = standard_factorization(word)
        return f"[{self._render_word(u)},{self._render_word(v)}]"


@dataclass(frozen=True, eq=False)
class LieElement:
    """Lyndon-basis coordinates; no zero coefficients are stored."""
    algebra: FreeLieAlgebra
    coords: Mapping[int, Scalar] = field(default_factory=dict)

    def _check(self, other: "LieElement") -> None:
        if not isinstance(other, LieElement) or other.algebra is not self.algebra:
            raise AmbientMismatchError("Elements belong to different free Lie algebras")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        coords = dict(self.coords)
        axpy(coords, self.algebra.field.one, other.coords)
        return LieElement(self.algebra, coords)

    def __neg__(self) -> "LieElement":
        return LieElement(self.algebra, {i: -c for i, c in self.coords.items()})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, scalar) -> "LieElement":
        scalar = self.algebra.field.coerce(scalar)
        if not scalar:
            return self.algebra.zero()
        return LieElement(self.algebra, {i: scalar * c for i, c in self.coords.items()})

    def __rmul__(self, scalar) -> "LieElement":
        return self.scale(scalar)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.algebra is other.algebra and dict(self.coords) == dict(other.coords)

    def __hash__(self) -> int:
        return hash((id(self.algebra), frozenset(self.coords.items())))

    def __bool__(self) -> bool:
        return bool(self.coords)

    @property
    def degree(self) -> int:
        return max((self.algebra.basis_degrees[i] for i in self.coords), default=-1)

    def degrees(self) -> List[int]:
        return sorted({self.algebra.basis_degrees[i] for i in self.coords})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_component(self, d: int) -> "LieElement":
        return LieElement(self.algebra, {i: c for i, c in self.coords.items()
                                         if self.algebra.basis_degrees[i] == d})

    def grade_split(self) -> List["LieElement"]:
        return [self.homogeneous_component(d) for d in range(self.algebra.degree + 1)]

    def __str__(self) -> str:
        if not self.coords:
            return "0"
        parts = []
        for i in sorted(self.coords, reverse=True):
            text = self.algebra.field.render(self.coords[i])
            negative = text.startswith("-")
            if negative:
                text = text[1:]
            body = self.algebra.render_basis(i)
            if text != "1":
                body = f"{text}*{body}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f" - {body}" if negative else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LieElement({self})"


def lyndon_basis(gens: int, d: int) -> List[Word]:
    """Lyndon words of exact length d over gens letters, lexicographic."""
    return [w for w in lyndon_words(gens, d) if len(w) == d]


def lie_to_assoc(x: LieElement) -> AssocElement:
    algebra = x.algebra
    terms: Dict[Word, Scalar] = {}
    for i, c in x.coords.items():
        for word, value in algebra.basis_element_assoc(i).terms.items():
            new_value = terms.get(word, 0) + c * value
            if new_value:
                terms[word] = new_value
            else:
                terms.pop(word, None)
    return AssocElement(algebra.assoc, terms)


def assoc_to_lie(algebra: FreeLieAlgebra, a: AssocElement) -> LieElement:
    """
    Lyndon coordinates of a Lie polynomial.

    The expansion of a bracketed Lyndon word w is w plus lexicographically larger
    words, so the smallest word of a Lie polynomial is Lyndon and carries the
    coefficient of its basis element.
    """
    if a.algebra != algebra.assoc:
        raise AmbientMismatchError("Associative element lives outside this Lie algebra's envelope")
    remainder: Dict[Word, Scalar] = dict(a.terms)
    coords: Vector = {}
    while remainder:
        word = min(remainder)
        index = algebra.index.get(word)
        if index is None:
            raise NotALieElementError(
                f"'{algebra.assoc.render_word(word)}' leads a non-Lie polynomial: {a}")
        c = remainder[word]
        coords[index] = c
        for w, value in algebra.basis_element_assoc(index).terms.items():
            new_value = remainder.get(w, 0) - c * value
            if new_value:
                remainder[w] = new_value
            else:
                remainder.pop(w, None)
    return LieElement(algebra, coords)


def bracket(a: LieElement, b: LieElement) -> LieElement:
    a._check(b)
    algebra = a.algebra
    coords: Vector = {}
    for i, ci in a.coords.items():
        for j, cj in b.coords.items():
            axpy(coords, ci * cj, algebra.bracket_basis(i, j))
    return LieElement(algebra, coords)


@dataclass(frozen=True)
class LieVarietySpec:
    """Identities in abstract variables v1..vk; L/Theta(L) is free in the variety."""
    identities: Tuple[LieElement, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "identities", tuple(self.identities))
        for identity in self.identities:
            if not identity:
                raise ZeroElementError("A Lie identity must be a nonzero Lie element")

    def has_linear_identity(self) -> bool:
        return any(1 in identity.degrees() for identity in self.identities)


def _substitution_tuples(algebra: FreeLieAlgebra, var_degrees: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Tuples of basis indices whose total weighted degree stays <= D."""
    def extend(prefix: Tuple[int, ...], budget: int) -> Iterator[Tuple[int, ...]]:
        position = len(prefix)
        if position == len(var_degrees):
            yield prefix
            return
        multiplicity = var_degrees[position]
        remaining = sum(var_degrees[position + 1:])
        for i, deg in enumerate(algebra.basis_degrees):
            if deg * multiplicity + remaining <= budget:
                yield from extend(prefix + (i,), budget - deg * multiplicity)
    yield from extend((), algebra.degree)


def identity_values(algebra: FreeLieAlgebra, identity_assoc: AssocElement) -> List[LieElement]:
    """
    Values of an identity (given as an associative polynomial in its variables) at
    tuples of Lyndon basis elements, for each multihomogeneous component and its
    full linearization.
    """
    values: List[LieElement] = []
    for component in multihomogeneous_components(identity_assoc):
        linear, _ = linearize(component)
        for body in (component, linear) if linear is not component else (component,):
            var_degrees = [0] * body.algebra.gens
            for letter in next(iter(body.terms)):
                var_degrees[letter] += 1
            if body.algebra.gens == 0:
                continue
            for choice in _substitution_tuples(algebra, var_degrees):
                images = [algebra.basis_element_assoc(i) for i in choice]
                value = assoc_to_lie(algebra, substitute(body, images, algebra.assoc))
                if value:
                    values.append(value)
    return values


def _bracket_closure(algebra: FreeLieAlgebra, seeds: Iterable[LieElement],
                     actors: Sequence[LieElement]) -> GradedSubspace:
    """Smallest graded subspace containing the seeds and closed under ad of the actors."""
    by_degree: List[List[Vector]] = [[] for _ in range(algebra.degree + 1)]
    for seed in seeds:
        for d in seed.degrees():
            by_degree[d].append(dict(seed.homogeneous_component(d).coords))
    components: List[Subspace] = [Subspace.zero(algebra.field, algebra.dim)]
    for d in range(1, algebra.degree + 1):
        vectors = list(by_degree[d])
        for actor in actors:
            lower = d - actor.degree
            if lower < 1:
                continue
            for row in components[lower].basis:
                vectors.append(dict(bracket(LieElement(algebra, row), actor).coords))
        components.append(Subspace.span(algebra.field, algebra.dim, vectors))
        logging.debug(f"Bracket closure degree {d}: dim {components[-1].dim}")
    return GradedSubspace(tuple(components))


def theta_verbal_ideal(spec: LieVarietySpec, algebra: FreeLieAlgebra) -> GradedSubspace:
    """The verbal ideal Theta(L) up to degree D, per degree in Lyndon coordinates."""
    seeds: List[LieElement] = []
    for identity in spec.identities:
        seeds.extend(identity_values(algebra, lie_to_assoc(identity)))
    generators = [algebra.generator(i) for i in range(algebra.gens)]
    ideal = _bracket_closure(algebra, seeds, generators)
    logging.info(f"Verbal ideal dims per degree: {ideal.dims()}")
    return ideal


def ideal_closure(algebra: FreeLieAlgebra, generators: Iterable[LieElement]) -> GradedSubspace:
    """The graded ideal generated by homogeneous Lie elements."""
    generators = [g for g in generators if g]
    for g in generators:
        if g.algebra is not algebra:
            raise AmbientMismatchError("Ideal generator from another Lie algebra")
        if not g.is_homogeneous():
            raise HypothesisError(f"Ideal generator {g} is not homogeneous")
    actors = [algebra.generator(i) for i in range(algebra.gens)]
    return _bracket_closure(algebra, generators, actors)


def lie_subalgebra(algebra: FreeLieAlgebra, elements: Iterable[LieElement]) -> Subspace:
    """The (truncated) Lie subalgebra generated by arbitrary elements, by fixpoint."""
    current = Subspace.span(algebra.field, algebra.dim, [dict(e.coords) for e in elements])
    while True:
        rows = current.basis
        products = [_bracket_rows(algebra, rows[i], rows[j])
                    for i in range(len(rows)) for j in range(i + 1, len(rows))]
        grown = current.extended(products)
        if grown.dim == current.dim:
            return current
        current = grown


def _bracket_rows(algebra: FreeLieAlgebra, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vector:
    return dict(bracket(LieElement(algebra, dict(u)), LieElement(algebra, dict(v))).coords)
