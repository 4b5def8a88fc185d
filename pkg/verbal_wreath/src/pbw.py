"""
Truncated universal enveloping algebra U(B) of a graded finite-dimensional Lie
algebra B, in the Poincare-Birkhoff-Witt basis of nondecreasing monomials
e_{a1} e_{a2} ... e_{an} (a1 <= a2 <= ... <= an).
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Mapping, Tuple

from .algebra_core import Scalar
from .exceptions import HypothesisError
from .extensions import FiniteLieAlgebra

Monomial = Tuple[int, ...]
EnvelopeElement = Dict[Monomial, Scalar]


@dataclass(frozen=True, eq=False)
class UniversalEnvelope:
    algebra: FiniteLieAlgebra
    degree: int

    def __post_init__(self):
        degrees = self.degrees
        if any(d < 1 for d in degrees):
            raise HypothesisError("Basis elements of B need positive degrees")
        if list(degrees) != sorted(degrees):
            raise HypothesisError("Basis of B must be ordered by degree")
        for (i, j), value in self.algebra.structure.items():
            if any(degrees[k] != degrees[i] + degrees[j] for k in value):
                raise HypothesisError(
                    f"[{self.algebra.names[i]},{self.algebra.names[j]}] is not homogeneous of degree "
                    f"{degrees[i] + degrees[j]}")

    @property
    def degrees(self) -> Tuple[int, ...]:
        return self.algebra.degrees if self.algebra.degrees is not None else (1,) * self.algebra.dim

    def monomial_degree(self, monomial: Monomial) -> int:
        return sum(self.degrees[a] for a in monomial)

    def monomial_key(self, monomial: Monomial) -> Tuple[int, Monomial]:
        """Degree first, then lexicographic."""
        return (self.monomial_degree(monomial), monomial)

    @cached_property
    def basis(self) -> Tuple[Monomial, ...]:
        monomials: List[Monomial] = [()]
        frontier: List[Monomial] = [()]
        while frontier:
            grown = []
            for monomial in frontier:
                start = monomial[-1] if monomial else 0
                for a in range(start, self.algebra.dim):
                    candidate = monomial + (a,)
                    if self.monomial_degree(candidate) <= self.degree:
                        grown.append(candidate)
            monomials.extend(grown)
            frontier = grown
        return tuple(sorted(monomials, key=self.monomial_key))

    @cached_property
    def index(self) -> Dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.basis)}

    def monomials_of_degree(self, d: int) -> List[Monomial]:
        return [m for m in self.basis if self.monomial_degree(m) == d]

    def dims(self) -> List[int]:
        counts = [0] * (self.degree + 1)
        for m in self.basis:
            counts[self.monomial_degree(m)] += 1
        return counts

    def render(self, monomial: Monomial) -> str:
        return "*".join(self.algebra.names[a] for a in monomial) if monomial else "1"

    @cached_property
    def _straightened(self) -> Dict[Tuple[Monomial, int], EnvelopeElement]:
        return {}

    def monomial_times(self, monomial: Monomial, i: int) -> EnvelopeElement:
        """monomial * e_i rewritten in the PBW basis, truncated above the degree."""
        key = (monomial, i)
        cache = self._straightened
        if key in cache:
            return cache[key]
        if self.monomial_degree(monomial) + self.degrees[i] > self.degree:
            result: EnvelopeElement = {}
        elif not monomial or monomial[-1] <= i:
            result = {monomial + (i,): self.algebra.field.one}
        else:
            # rest * e_j * e_i = (rest * e_i) * e_j + rest * [e_j, e_i]
            rest, j = monomial[:-1], monomial[-1]
            result = {}
            for m, c in self.monomial_times(rest, i).items():
                _accumulate(result, c, self.monomial_times(m, j))
            for k, c in self.algebra.bracket_basis(j, i).items():
                _accumulate(result, c, self.monomial_times(rest, k))
        cache[key] = result
        return result

    def multiply_right(self, element: Mapping[Monomial, Scalar], i: int) -> EnvelopeElement:
        result: EnvelopeElement = {}
        for monomial, c in element.items():
            _accumulate(result, c, self.monomial_times(monomial, i))
        return result

    def multiply(self, left: Mapping[Monomial, Scalar], right: Mapping[Monomial, Scalar]) -> EnvelopeElement:
        result: EnvelopeElement = {}
        for monomial, c in right.items():
            partial = dict(left)
            for a in monomial:
                partial = self.multiply_right(partial, a)
            _accumulate(result, c, partial)
        return result


def _accumulate(target: EnvelopeElement, scale: Scalar, source: Mapping[Monomial, Scalar]) -> None:
    for monomial, value in source.items():
        total = target.get(monomial, 0) + scale * value
        if total:
            target[monomial] = total
        else:
            target.pop(monomial, None)
