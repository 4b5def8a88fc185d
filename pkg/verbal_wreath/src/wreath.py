"""
The mixed verbal wreath product of a free cyclic pair of a variety X with a graded
finite-dimensional Lie algebra B, truncated at degree D.

The acting algebra is Gamma = P x| B. P is free on the generators y_i(x)z for
PBW monomials z of U(B), of degree 1 + deg z. The module is
U(B) (x) (W / X*(W, P)) with W = U(P) and cyclic vector 1 (x) 1; P acts by right
multiplication on the W factor and b in B by

    (z (x) w).b = (z b) (x) w + z (x) [w, b],

where [w, b] is the derivation of W extending p -> p.b on the generators of P.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Mapping, Sequence, Tuple

from .algebra_core import Scalar, SparseMatrix, Subspace, Vector, axpy
from .exceptions import HypothesisError, MorphismError
from .extensions import FiniteLieAlgebra
from .free_assoc import AssocElement, FreeAssocAlgebra
from .free_lie import FreeLieAlgebra, LieElement, lie_to_assoc
from .pairs import (BracketRelation, QuotientMap, RepPair, extend_hom, free_cyclic_pair,
                    quotient_pair_with_map)
from .pbw import Monomial, UniversalEnvelope
from .varieties import VarietySpec, graded_closure, identity_values, verbal_submodule


@dataclass(frozen=True)
class PGenerator:
    """The free generator y_{base} (x) z of P."""
    base: int
    monomial: Monomial
    name: str
    weight: int


@dataclass(frozen=True, eq=False)
class WreathProduct:
    base_spec: VarietySpec
    base_gens: int
    top: FiniteLieAlgebra
    envelope: UniversalEnvelope
    p_generators: Tuple[PGenerator, ...]
    gamma: FreeAssocAlgebra
    tensor: RepPair
    module: RepPair
    projection: QuotientMap

    @property
    def degree(self) -> int:
        return self.gamma.degree

    @property
    def field(self):
        return self.gamma.field

    @property
    def p_count(self) -> int:
        return len(self.p_generators)

    @cached_property
    def p_letter(self) -> Dict[Tuple[int, Monomial], int]:
        return {(g.base, g.monomial): q for q, g in enumerate(self.p_generators)}

    def base_letter(self, i: int) -> int:
        """Gamma letter of y_i (x) 1."""
        return self.p_letter[(i, ())]

    def top_letter(self, alpha: int) -> int:
        return self.p_count + alpha

    @cached_property
    def p_algebra(self) -> FreeLieAlgebra:
        """P as the free Lie algebra on its generators (same letter order as Gamma)."""
        names = tuple(g.name for g in self.p_generators)
        weights = tuple(g.weight for g in self.p_generators)
        return FreeLieAlgebra(FreeAssocAlgebra(self.field, names, self.degree, weights))

    @cached_property
    def p_basis(self) -> Tuple[AssocElement, ...]:
        """Lyndon basis of P, expanded as elements of U(Gamma)."""
        return tuple(self.gamma.element(dict(self.p_algebra.basis_element_assoc(i).terms))
                     for i in range(self.p_algebra.dim))

    def top_element(self, coords: Mapping[int, Scalar]) -> AssocElement:
        return self.gamma.element({(self.top_letter(alpha),): c for alpha, c in coords.items()})

    def p_action_of_top(self, q: int, alpha: int) -> Vector:
        """[p_q, e_alpha] = p_q . e_alpha in P-generator coordinates."""
        return _p_times_top(self.p_generators, self.p_letter, self.envelope, q, alpha)


def _p_times_top(p_generators: Sequence[PGenerator], p_letter: Mapping[Tuple[int, Monomial], int],
                 envelope: UniversalEnvelope, q: int, alpha: int) -> Vector:
    # y_i (x) z with deg z = D has weight D + 1 and vanishes in the truncation
    g = p_generators[q]
    image = envelope.monomial_times(g.monomial, alpha)
    return {p_letter[key]: c for z, c in image.items() if (key := (g.base, z)) in p_letter}


def _p_generators(base_gens: int, envelope: UniversalEnvelope, D: int) -> Tuple[PGenerator, ...]:
    generators = []
    for i in range(base_gens):
        for z in envelope.basis:
            weight = 1 + envelope.monomial_degree(z)
            if weight <= D:
                suffix = "".join(envelope.algebra.names[a] for a in z)
                generators.append(PGenerator(i, z, f"y{i + 1}{suffix}", weight))
    return tuple(sorted(generators, key=lambda g: (g.weight, g.base, envelope.monomial_key(g.monomial))))


def wreath_build(base_spec: VarietySpec, base_gens: int, top: FiniteLieAlgebra, D: int) -> WreathProduct:
    field_spec = top.field
    envelope = UniversalEnvelope(top, D)
    if any(d > D for d in envelope.degrees):
        raise HypothesisError(f"Top algebra has basis elements above the truncation degree {D}")
    p_generators = _p_generators(base_gens, envelope, D)
    p_count = len(p_generators)
    p_letter = {(g.base, g.monomial): q for q, g in enumerate(p_generators)}
    gamma = FreeAssocAlgebra(
        field_spec,
        tuple(g.name for g in p_generators) + top.names,
        D,
        tuple(g.weight for g in p_generators) + envelope.degrees,
    )
    w_algebra = FreeAssocAlgebra(field_spec, tuple(g.name for g in p_generators), D,
                                 tuple(g.weight for g in p_generators))

    cells = [(z, w) for z in envelope.basis for w in w_algebra.basis_words
             if envelope.monomial_degree(z) + w_algebra.word_degree(w) <= D]
    cells.sort(key=lambda cell: (envelope.monomial_degree(cell[0]) + w_algebra.word_degree(cell[1]),
                                 envelope.monomial_key(cell[0]), w_algebra.word_key(cell[1])))
    position = {cell: n for n, cell in enumerate(cells)}
    degrees = tuple(envelope.monomial_degree(z) + w_algebra.word_degree(w) for z, w in cells)
    labels = tuple(f"{envelope.render(z)}|{w_algebra.render_word(w)}" for z, w in cells)
    size = len(cells)
    one = field_spec.one

    def p_times_top(q: int, alpha: int) -> Vector:
        return _p_times_top(p_generators, p_letter, envelope, q, alpha)

    actions: List[SparseMatrix] = []
    for q in range(p_count):
        rows = []
        for z, w in cells:
            target = position.get((z, w + (q,)))
            rows.append({target: one} if target is not None else {})
        actions.append(SparseMatrix.from_row_vectors(field_spec, rows, size))
    for alpha in range(top.dim):
        letter_images = {q: p_times_top(q, alpha) for q in range(p_count)}
        rows = []
        for z, w in cells:
            row: Vector = {}
            for z2, c in envelope.monomial_times(z, alpha).items():
                target = position.get((z2, w))
                if target is not None:
                    axpy(row, c, {target: one})
            for spot, letter in enumerate(w):
                for q, c in letter_images[letter].items():
                    target = position.get((z, w[:spot] + (q,) + w[spot + 1:]))
                    if target is not None:
                        axpy(row, c, {target: one})
            rows.append(row)
        actions.append(SparseMatrix.from_row_vectors(field_spec, rows, size))

    relations = []
    for q in range(p_count):
        for alpha in range(top.dim):
            relations.append(BracketRelation(q, p_count + alpha, p_times_top(q, alpha)))
    for (i, j), value in top.structure.items():
        relations.append(BracketRelation(p_count + i, p_count + j,
                                         {p_count + k: c for k, c in value.items()}))

    tensor = RepPair(gamma, labels, degrees, tuple(actions), {position[((), ())]: one}, tuple(relations))
    p_lie = FreeLieAlgebra(w_algebra)
    p_basis = [gamma.element(dict(p_lie.basis_element_assoc(i).terms)) for i in range(p_lie.dim)]
    submodule = verbal_submodule(tensor, base_spec, p_basis)
    module, projection = quotient_pair_with_map(tensor, submodule)
    logging.info(f"Wreath product: {p_count} generators of P, U(B) dims {envelope.dims()}, "
                 f"module dims {module.dims()}")
    return WreathProduct(base_spec, base_gens, top, envelope, p_generators, gamma, tensor, module, projection)


def wreath_action(wp: WreathProduct, m: Mapping[int, Scalar], g) -> Vector:
    """m.g for g in Gamma, given as a Lie or associative polynomial in the Gamma letters."""
    if isinstance(g, LieElement):
        g = lie_to_assoc(g)
    return wp.module.act(m, g)


@dataclass
class Definition1Report:
    conditions: Dict[str, bool] = field(default_factory=dict)
    details: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.conditions.values())


def check_definition1(wp: WreathProduct) -> Definition1Report:
    report = Definition1Report()
    names = tuple(f"y{i + 1}" for i in range(wp.base_gens))

    # (1) the free base pair on y_i sits inside as a subpair
    base = free_cyclic_pair(wp.base_spec, wp.base_gens, wp.degree, wp.field, names)
    try:
        images = [wp.gamma.generator(wp.base_letter(i)) for i in range(wp.base_gens)]
        hom = extend_hom(base, wp.module, images)
        kernel = hom.kernel_by_degree()
        report.conditions["subpair"] = not any(kernel)
        report.details["subpair"] = f"kernel dims {kernel}"
    except MorphismError as e:
        report.conditions["subpair"] = False
        report.details["subpair"] = str(e)

    # (2) the y_i generate P modulo P^2 as a B-module, so A and B generate Gamma
    p_count = wp.p_count
    seeds = [{wp.base_letter(i): wp.field.one} for i in range(wp.base_gens)]
    current = Subspace.span(wp.field, p_count, seeds)
    while True:
        grown = current.extended(
            _act_on_p(wp, row, alpha) for row in current.basis for alpha in range(wp.top.dim))
        if grown.dim == current.dim:
            break
        current = grown
    report.conditions["generation"] = current.dim == p_count
    report.details["generation"] = f"{current.dim} of {p_count} generators of P reached"

    # (3) the cyclic vector generates the module over Gamma
    reached = graded_closure(wp.module, [wp.module.cyclic], wp.module.generator_actors())
    report.conditions["cyclic"] = reached.dims() == wp.module.dims()
    report.details["cyclic"] = f"generated dims {reached.dims()} of {wp.module.dims()}"

    # (4) the restriction to P lies in the variety
    values = identity_values(wp.module, wp.base_spec, wp.p_basis)
    report.conditions["variety"] = not values
    report.details["variety"] = (f"{len(values)} nonzero identity values" if values
                                 else "all identity values vanish")
    logging.info(f"Definition checks: {report.conditions}")
    return report


def _act_on_p(wp: WreathProduct, v: Mapping[int, Scalar], alpha: int) -> Vector:
    result: Vector = {}
    for q, c in v.items():
        axpy(result, c, wp.p_action_of_top(q, alpha))
    return result


def corrupt_action(wp: WreathProduct, generator: str, source_label: str, target_label: str) -> WreathProduct:
    """A copy of wp whose module sends source.generator to the target basis vector."""
    module = wp.module
    g = module.algebra.names.index(generator)
    source = module.labels.index(source_label)
    target = module.labels.index(target_label)
    entries = {key: value for key, value in module.actions[g].entries.items() if key[0] != source}
    entries[(source, target)] = module.field.one
    actions = list(module.actions)
    actions[g] = SparseMatrix(module.field, module.dim, module.dim, entries)
    corrupted = RepPair(module.algebra, module.labels, module.degrees, tuple(actions),
                        module.cyclic, module.relations)
    return WreathProduct(wp.base_spec, wp.base_gens, wp.top, wp.envelope, wp.p_generators, wp.gamma,
                         wp.tensor, corrupted, wp.projection)


def action_table(pair: RepPair) -> str:
    """Deterministic dump of every nonzero m.g, one line each."""
    lines = [f"# basis ({pair.dim}): dims {pair.dims()}"]
    for i, label in enumerate(pair.labels):
        lines.append(f"{i}\t{pair.degrees[i]}\t{label}")
    for g, name in enumerate(pair.algebra.names):
        lines.append(f"# action of {name}")
        for r in range(pair.dim):
            image = pair.actions[g].row(r)
            if image:
                lines.append(f"{pair.labels[r]} . {name} = {pair.render_vector(image)}")
    return "\n".join(lines) + "\n"
