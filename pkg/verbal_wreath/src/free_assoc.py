"""
The free associative algebra with unity on finitely many generators, graded by
(optionally weighted) degree and truncated above a fixed degree D.

Words are tuples of generator indices; the empty word is the unity.
"""
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra_core import FieldSpec, Scalar
from .exceptions import AmbientMismatchError, ZeroElementError

Word = Tuple[int, ...]


@dataclass(frozen=True)
class FreeAssocAlgebra:
    field: FieldSpec
    names: Tuple[str, ...]
    degree: int
    weights: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if self.weights is None:
            object.__setattr__(self, "weights", (1,) * len(self.names))
        else:
            object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.weights) != len(self.names):
            raise ValueError("One weight per generator is required")
        if any(w < 1 for w in self.weights):
            raise ValueError("Generator weights must be positive")
        if self.degree < 0:
            raise ValueError("Truncation degree must be non-negative")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"Duplicate generator names in {self.names}")

    @classmethod
    def standard(cls, field_spec: FieldSpec, gens: int, degree: int, prefix: str = "x") -> "FreeAssocAlgebra":
        return cls(field_spec, tuple(f"{prefix}{i + 1}" for i in range(gens)), degree)

    @property
    def gens(self) -> int:
        return len(self.names)

    def word_degree(self, word: Word) -> int:
        return sum(self.weights[i] for i in word)

    def word_key(self, word: Word) -> Tuple[int, Word]:
        """Sort key of the degree-then-lexicographic monomial order."""
        return (self.word_degree(word), word)

    @cached_property
    def _words_by_degree(self) -> Tuple[Tuple[Word, ...], ...]:
        by_degree: List[List[Word]] = [[] for _ in range(self.degree + 1)]
        by_degree[0].append(())
        for d in range(1, self.degree + 1):
            for i, w in enumerate(self.weights):
                if w <= d:
                    by_degree[d].extend(prefix + (i,) for prefix in by_degree[d - w])
            by_degree[d].sort()
        return tuple(tuple(words) for words in by_degree)

    def words_of_degree(self, d: int) -> Tuple[Word, ...]:
        if not 0 <= d <= self.degree:
            return ()
        return self._words_by_degree[d]

    @cached_property
    def basis_words(self) -> Tuple[Word, ...]:
        return tuple(w for words in self._words_by_degree for w in words)

    @cached_property
    def word_index(self) -> Dict[Word, int]:
        return {w: i for i, w in enumerate(self.basis_words)}

    def element(self, terms: Mapping[Word, object]) -> "AssocElement":
        clean: Dict[Word, Scalar] = {}
        for word, value in terms.items():
            word = tuple(word)
            if any(not 0 <= i < self.gens for i in word):
                raise AmbientMismatchError(f"Word {word} uses a letter outside {self.names}")
            if self.word_degree(word) > self.degree:
                continue
            scalar = self.field.coerce(value)
            if scalar:
                clean[word] = clean.get(word, self.field.zero) + scalar
                if not clean[word]:
                    del clean[word]
        return AssocElement(self, clean)

    def zero(self) -> "AssocElement":
        return AssocElement(self, {})

    def one(self) -> "AssocElement":
        return self.scalar(1)

    def scalar(self, value) -> "AssocElement":
        return self.element({(): value})

    def generator(self, i: int) -> "AssocElement":
        return self.element({(i,): 1})

    def render_word(self, word: Word) -> str:
        return "*".join(self.names[i] for i in word) if word else "1"


@dataclass(frozen=True, eq=False)
class AssocElement:
    """A truncated noncommutative polynomial; no zero coefficients are stored."""
    algebra: FreeAssocAlgebra
    terms: Mapping[Word, Scalar] = field(default_factory=dict)

    def _check(self, other: "AssocElement") -> None:
        if not isinstance(other, AssocElement) or other.algebra != self.algebra:
            raise AmbientMismatchError("Elements belong to different free associative algebras")

    def __add__(self, other: "AssocElement") -> "AssocElement":
        self._check(other)
        terms = dict(self.terms)
        for word, value in other.terms.items():
            new_value = terms.get(word, 0) + value
            if new_value:
                terms[word] = new_value
            else:
                terms.pop(word, None)
        return AssocElement(self.algebra, terms)

    def __neg__(self) -> "AssocElement":
        return AssocElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "AssocElement") -> "AssocElement":
        return self + (-other)

    def __mul__(self, other) -> "AssocElement":
        if not isinstance(other, AssocElement):
            return self.scale(other)
        self._check(other)
        algebra = self.algebra
        terms: Dict[Word, Scalar] = {}
        for w1, c1 in self.terms.items():
            d1 = algebra.word_degree(w1)
            for w2, c2 in other.terms.items():
                if d1 + algebra.word_degree(w2) > algebra.degree:
                    continue
                word = w1 + w2
                new_value = terms.get(word, 0) + c1 * c2
                if new_value:
                    terms[word] = new_value
                else:
                    terms.pop(word, None)
        return AssocElement(algebra, terms)

    def __rmul__(self, scalar) -> "AssocElement":
        return self.scale(scalar)

    def scale(self, scalar) -> "AssocElement":
        scalar = self.algebra.field.coerce(scalar)
        if not scalar:
            return self.algebra.zero()
        return AssocElement(self.algebra, {w: scalar * c for w, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, AssocElement):
            return NotImplemented
        return self.algebra == other.algebra and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.algebra, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Highest degree present; -1 for zero."""
        return max((self.algebra.word_degree(w) for w in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({self.algebra.word_degree(w) for w in self.terms}) <= 1

    def homogeneous_component(self, d: int) -> "AssocElement":
        return AssocElement(self.algebra, {w: c for w, c in self.terms.items()
                                           if self.algebra.word_degree(w) == d})

    def grade_split(self) -> List["AssocElement"]:
        return grade_split(self)

    def leading_term(self) -> Tuple[Word, Scalar]:
        return leading_term(self)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(self.terms, key=self.algebra.word_key, reverse=True)
        parts = []
        for word in ordered:
            coefficient = self.terms[word]
            text = self.algebra.field.render(coefficient)
            negative = text.startswith("-")
            if negative:
                text = text[1:]
            if word and text == "1":
                body = self.algebra.render_word(word)
            elif word:
                body = f"{text}*{self.algebra.render_word(word)}"
            else:
                body = text
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f" - {body}" if negative else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"AssocElement({self})"


def mul(a: AssocElement, b: AssocElement) -> AssocElement:
    """The truncated product of two elements; scalars go through scale."""
    if not isinstance(b, AssocElement):
        raise AmbientMismatchError(f"mul takes two algebra elements, got {type(b).__name__}")
    return a * b


def grade_split(a: AssocElement) -> List[AssocElement]:
    """Components indexed by degree 0..D; their sum is a."""
    components: List[Dict[Word, Scalar]] = [{} for _ in range(a.algebra.degree + 1)]
    for word, value in a.terms.items():
        components[a.algebra.word_degree(word)][word] = value
    return [AssocElement(a.algebra, c) for c in components]


def compare(w1: Word, w2: Word, algebra: Optional[FreeAssocAlgebra] = None) -> int:
    """Degree-then-lexicographic comparison: -1, 0 or 1."""
    k1 = algebra.word_key(w1) if algebra else (len(w1), tuple(w1))
    k2 = algebra.word_key(w2) if algebra else (len(w2), tuple(w2))
    return (k1 > k2) - (k1 < k2)


def leading_term(a: AssocElement) -> Tuple[Word, Scalar]:
    if not a.terms:
        raise ZeroElementError("The zero element has no leading term")
    word = max(a.terms, key=a.algebra.word_key)
    return word, a.terms[word]


def multidegree(word: Word, gens: int) -> Tuple[int, ...]:
    counts = [0] * gens
    for i in word:
        counts[i] += 1
    return tuple(counts)


def multihomogeneous_components(a: AssocElement) -> List[AssocElement]:
    """Split by degree in each generator separately, ordered by (degree, multidegree)."""
    buckets: Dict[Tuple[int, ...], Dict[Word, Scalar]] = {}
    for word, value in a.terms.items():
        buckets.setdefault(multidegree(word, a.algebra.gens), {})[word] = value
    keys = sorted(buckets, key=lambda md: (sum(md), tuple(-x for x in md)))
    return [AssocElement(a.algebra, buckets[k]) for k in keys]


def linearize(a: AssocElement, prefix: str = "v") -> Tuple[AssocElement, Tuple[int, ...]]:
    """
    Full linearization of a multihomogeneous element.

    A variable of degree k is replaced by k fresh copies, summed over all ways of
    assigning the copies to its occurrences. Returns the linearized element (in a
    new algebra) and, for every new variable, the index of the variable it copies.
    """
    components = multihomogeneous_components(a)
    if len(components) > 1:
        raise ValueError("Only multihomogeneous elements can be linearized")
    if not components:
        return a, tuple(range(a.algebra.gens))
    degrees = multidegree(next(iter(a.terms)), a.algebra.gens)
    if all(d <= 1 for d in degrees):
        return a, tuple(range(a.algebra.gens))
    copy_of: List[int] = []
    offsets = []
    for variable, d in enumerate(degrees):
        offsets.append(len(copy_of))
        copy_of.extend([variable] * d)
    target = FreeAssocAlgebra(a.algebra.field, tuple(f"{prefix}{i + 1}" for i in range(len(copy_of))),
                              a.algebra.degree, tuple(a.algebra.weights[v] for v in copy_of))
    assignments = [list(permutations(range(d))) for d in degrees]
    terms: Dict[Word, Scalar] = {}
    for word, value in a.terms.items():
        for choice in product(*assignments):
            seen = [0] * len(degrees)
            new_word = []
            for letter in word:
                new_word.append(offsets[letter] + choice[letter][seen[letter]])
                seen[letter] += 1
            new_word = tuple(new_word)
            terms[new_word] = terms.get(new_word, 0) + value
    return target.element(terms), tuple(copy_of)


def substitute(a: AssocElement, images: Sequence[AssocElement], target: FreeAssocAlgebra) -> AssocElement:
    """The algebra homomorphism sending generator i to images[i], applied to a."""
    if len(images) != a.algebra.gens:
        raise AmbientMismatchError(f"Expected {a.algebra.gens} images, got {len(images)}")
    result = target.zero()
    cache: Dict[Word, AssocElement] = {(): target.one()}
    for word in sorted(a.terms, key=len):
        value = cache.get(word)
        if value is None:
            value = target.one()
            for letter in word:
                value = value * images[letter]
            cache[word] = value
        result = result + value.scale(a.terms[word])
    return result
