"""
Exact field arithmetic and sparse linear algebra.

Vectors are sparse dicts {coordinate index: nonzero scalar}. Every other module
builds its subspaces, quotients and rank arguments on top of this file, so all
arithmetic is exact: rationals are `fractions.Fraction`, residues mod p are
`PrimeFieldElement`.
"""
from dataclasses import dataclass, field
from enum import Enum, auto
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy

from .exceptions import AlgebraError, ClosureViolationError, DimensionMismatchError


class PrimeFieldElement:
    """A residue class modulo a prime p."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> Optional[int]:
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise AlgebraError(f"Cannot mix residues mod {self.p} and mod {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError(f"division by zero mod {self.p}")
        return PrimeFieldElement(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero mod {self.p}")
        return PrimeFieldElement(o * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if isinstance(other, (PrimeFieldElement, int, Fraction)) else None
        if o is None:
            return NotImplemented
        return self.value == o

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"PrimeFieldElement({self.value}, {self.p})"

    def __str__(self) -> str:
        return str(self.value)


Scalar = Union[Fraction, PrimeFieldElement]
Vector = Dict[int, Scalar]


class FieldKind(Enum):
    RATIONALS = auto()
    PRIME = auto()


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: exact rationals, or a prime field Fp."""
    kind: FieldKind = FieldKind.RATIONALS
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind is FieldKind.PRIME:
            if not isinstance(self.p, int) or self.p < 2 or not sympy.isprime(self.p):
                raise ValueError(f"Prime field needs a prime modulus, got {self.p!r}")
        elif self.p is not None:
            raise ValueError("The rational field takes no modulus")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(FieldKind.PRIME, p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accepts "Q" or "Fp:<p>"."""
        text = text.strip()
        if text == "Q":
            return cls.rationals()
        if text.startswith("Fp:"):
            digits = text[3:]
            if not digits.isdigit():
                raise ValueError(f"Invalid prime field spec '{text}'")
            return cls.prime(int(digits))
        raise ValueError(f"Unknown field '{text}' (expected 'Q' or 'Fp:<p>')")

    @property
    def characteristic(self) -> int:
        return 0 if self.kind is FieldKind.RATIONALS else self.p

    def coerce(self, value) -> Scalar:
        if self.kind is FieldKind.RATIONALS:
            if isinstance(value, PrimeFieldElement):
                raise AlgebraError("Cannot coerce a residue into the rationals")
            return Fraction(value)
        if isinstance(value, PrimeFieldElement):
            if value.p != self.p:
                raise AlgebraError(f"Residue mod {value.p} is not in Fp:{self.p}")
            return value
        value = Fraction(value)
        return PrimeFieldElement(value.numerator * pow(value.denominator, -1, self.p), self.p)

    @property
    def zero(self) -> Scalar:
        return self.coerce(0)

    @property
    def one(self) -> Scalar:
        return self.coerce(1)

    def render(self, value: Scalar) -> str:
        return str(value)

    def __str__(self) -> str:
        return "Q" if self.kind is FieldKind.RATIONALS else f"Fp:{self.p}"


# --- vector helpers ---

def axpy(target: Vector, scale: Scalar, source: Mapping[int, Scalar]) -> None:
    """target += scale * source, in place, dropping zeros."""
    if not scale:
        return
    for index, value in source.items():
        new_value = target.get(index, 0) + scale * value
        if new_value:
            target[index] = new_value
        else:
            target.pop(index, None)


def add_vectors(u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vector:
    result = dict(u)
    for index, value in v.items():
        new_value = result.get(index, 0) + value
        if new_value:
            result[index] = new_value
        else:
            result.pop(index, None)
    return result


def sub_vectors(u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vector:
    result = dict(u)
    for index, value in v.items():
        new_value = result.get(index, 0) - value
        if new_value:
            result[index] = new_value
        else:
            result.pop(index, None)
    return result


def scale_vector(scale: Scalar, v: Mapping[int, Scalar]) -> Vector:
    if not scale:
        return {}
    return {index: scale * value for index, value in v.items()}


def as_vector(field_spec: FieldSpec, values, dim: Optional[int] = None) -> Vector:
    """Coerces a dense sequence or a sparse mapping into a sparse vector."""
    if isinstance(values, Mapping):
        items = values.items()
    else:
        values = list(values)
        if dim is not None and len(values) != dim:
            raise DimensionMismatchError(dim, len(values))
        items = enumerate(values)
    result: Vector = {}
    for index, value in items:
        if dim is not None and not 0 <= index < dim:
            raise DimensionMismatchError(dim, index + 1)
        scalar = field_spec.coerce(value)
        if scalar:
            result[index] = scalar
    return result


# --- matrices ---

@dataclass(frozen=True, eq=False)
class SparseMatrix:
    """A rows x cols matrix storing nonzero entries only."""
    field: FieldSpec
    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], Scalar]

    def __post_init__(self):
        for (r, c), value in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise DimensionMismatchError((self.rows, self.cols), (r + 1, c + 1))
            if not value:
                raise ValueError("SparseMatrix entries must be nonzero")

    @classmethod
    def from_row_vectors(cls, field_spec: FieldSpec, row_vectors: Sequence[Mapping[int, Scalar]],
                         cols: int) -> "SparseMatrix":
        entries = {}
        for r, row in enumerate(row_vectors):
            for c, value in row.items():
                if value:
                    entries[(r, c)] = value
        return cls(field_spec, len(row_vectors), cols, entries)

    @classmethod
    def from_dense(cls, field_spec: FieldSpec, dense: Sequence[Sequence]) -> "SparseMatrix":
        cols = len(dense[0]) if dense else 0
        rows = []
        for row in dense:
            if len(row) != cols:
                raise DimensionMismatchError(cols, len(row))
            rows.append(as_vector(field_spec, row))
        return cls.from_row_vectors(field_spec, rows, cols)

    @classmethod
    def zero(cls, field_spec: FieldSpec, rows: int, cols: int) -> "SparseMatrix":
        return cls(field_spec, rows, cols, {})

    @cached_property
    def row_vectors(self) -> Tuple[Vector, ...]:
        rows: List[Vector] = [{} for _ in range(self.rows)]
        for (r, c), value in self.entries.items():
            rows[r][c] = value
        return tuple(rows)

    def row(self, r: int) -> Vector:
        return self.row_vectors[r]

    def vecmul(self, v: Mapping[int, Scalar]) -> Vector:
        """The row vector v times this matrix."""
        result: Vector = {}
        for r, coefficient in v.items():
            axpy(result, coefficient, self.row_vectors[r])
        return result

    def matvec(self, x: Mapping[int, Scalar]) -> Vector:
        """This matrix times the column vector x."""
        result: Vector = {}
        for (r, c), value in self.entries.items():
            xc = x.get(c)
            if xc:
                new_value = result.get(r, 0) + value * xc
                if new_value:
                    result[r] = new_value
                else:
                    result.pop(r, None)
        return result

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.field, self.cols, self.rows,
                            {(c, r): v for (r, c), v in self.entries.items()})

    def to_dense(self) -> List[List[Scalar]]:
        dense = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for (r, c), value in self.entries.items():
            dense[r][c] = value
        return dense

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and dict(self.entries) == dict(other.entries)

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def _echelon_rows(field_spec: FieldSpec, rows: Iterable[Mapping[int, Scalar]]) -> List[Vector]:
    """Reduced row-echelon rows (pivot = 1) sorted by pivot column."""
    pivots: Dict[int, Vector] = {}
    for source in rows:
        row = dict(source)
        # pivot rows are fully reduced, so one pass over a snapshot clears every pivot column
        for column in [c for c in row if c in pivots]:
            coefficient = row.get(column)
            if coefficient:
                axpy(row, -coefficient, pivots[column])
        if not row:
            continue
        pivot = min(row)
        inverse = field_spec.one / row[pivot]
        row = {c: v * inverse for c, v in row.items()}
        for other in pivots.values():
            coefficient = other.get(pivot)
            if coefficient:
                axpy(other, -coefficient, row)
        pivots[pivot] = row
    return [pivots[p] for p in sorted(pivots)]


def rref(m: SparseMatrix) -> SparseMatrix:
    """The unique reduced row-echelon form; zero rows are kept at the bottom."""
    rows = _echelon_rows(m.field, m.row_vectors)
    return SparseMatrix.from_row_vectors(m.field, rows + [{}] * (m.rows - len(rows)), m.cols)


def rank(m: SparseMatrix) -> int:
    return len(_echelon_rows(m.field, m.row_vectors))


def kernel(m: SparseMatrix) -> "Subspace":
    """The null space {x : m x = 0} inside K^cols."""
    rows = _echelon_rows(m.field, m.row_vectors)
    pivot_columns = {min(row): row for row in rows}
    generators = []
    for free in range(m.cols):
        if free in pivot_columns:
            continue
        x: Vector = {free: m.field.one}
        for pivot, row in pivot_columns.items():
            value = row.get(free)
            if value:
                x[pivot] = -value
        generators.append(x)
    return Subspace.span(m.field, m.cols, generators)


def solve(m: SparseMatrix, b: Mapping[int, Scalar]) -> Optional[Vector]:
    """One solution x of m x = b, or None when the system is infeasible."""
    augmented = []
    for r in range(m.rows):
        row = dict(m.row_vectors[r])
        if b.get(r):
            row[m.cols] = b[r]
        augmented.append(row)
    for r in b:
        if not 0 <= r < m.rows:
            raise DimensionMismatchError(m.rows, r + 1)
    x: Vector = {}
    for row in _echelon_rows(m.field, augmented):
        pivot = min(row)
        if pivot == m.cols:
            return None
        value = row.get(m.cols)
        if value:
            x[pivot] = value
    return x


# --- subspaces ---

@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of K^ambient_dim held as reduced row-echelon basis rows."""
    field: FieldSpec
    ambient_dim: int
    basis: Tuple[Vector, ...] = ()

    @classmethod
    def span(cls, field_spec: FieldSpec, ambient_dim: int,
             vectors: Iterable[Mapping[int, Scalar]]) -> "Subspace":
        vectors = list(vectors)
        for v in vectors:
            for index in v:
                if not 0 <= index < ambient_dim:
                    raise DimensionMismatchError(ambient_dim, index + 1)
        return cls(field_spec, ambient_dim, tuple(_echelon_rows(field_spec, vectors)))

    @classmethod
    def zero(cls, field_spec: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls(field_spec, ambient_dim, ())

    @cached_property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(min(row) for row in self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check(self, v: Mapping[int, Scalar]) -> None:
        for index in v:
            if not 0 <= index < self.ambient_dim:
                raise DimensionMismatchError(self.ambient_dim, index + 1)

    def reduce(self, v: Mapping[int, Scalar]) -> Vector:
        """Normal form of v: zero on every pivot column, equal to v modulo the subspace."""
        self._check(v)
        result = dict(v)
        for pivot, row in zip(self.pivots, self.basis):
            coefficient = result.get(pivot)
            if coefficient:
                axpy(result, -coefficient, row)
        return result

    def member(self, v: Mapping[int, Scalar]) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Mapping[int, Scalar]) -> List[Scalar]:
        """Coefficients of v on the basis rows; v must lie in the subspace."""
        if not self.member(v):
            raise ClosureViolationError("Vector does not lie in the subspace")
        return [v.get(p, self.field.zero) for p in self.pivots]

    def extended(self, vectors: Iterable[Mapping[int, Scalar]]) -> "Subspace":
        return Subspace.span(self.field, self.ambient_dim, list(self.basis) + list(vectors))

    def contains(self, other: "Subspace") -> bool:
        return all(self.member(row) for row in other.basis)

    def complement_indices(self, indices: Optional[Iterable[int]] = None) -> List[int]:
        """Non-pivot coordinates (optionally restricted), i.e. the echelon completion."""
        pivots = set(self.pivots)
        pool = range(self.ambient_dim) if indices is None else indices
        return [i for i in pool if i not in pivots]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def member(s: Subspace, v) -> bool:
    """Exact membership test; dense sequences must have length s.ambient_dim."""
    return s.member(as_vector(s.field, v, s.ambient_dim))


@dataclass(frozen=True, eq=False)
class GradedSubspace:
    """One Subspace per degree 0..D, all sharing global coordinates."""
    components: Tuple[Subspace, ...]

    @property
    def degree(self) -> int:
        return len(self.components) - 1

    @property
    def ambient_dim(self) -> int:
        return self.components[0].ambient_dim

    def dims(self) -> List[int]:
        return [c.dim for c in self.components]

    def reduce(self, v: Mapping[int, Scalar]) -> Vector:
        for component in self.components:
            v = component.reduce(v)
        return v

    def member(self, v: Mapping[int, Scalar]) -> bool:
        return not self.reduce(v)

    def basis(self) -> List[Vector]:
        return [row for component in self.components for row in component.basis]

    @cached_property
    def pivots(self) -> frozenset:
        return frozenset(p for component in self.components for p in component.pivots)
