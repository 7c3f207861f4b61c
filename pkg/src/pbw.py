"""
Classificazione delle deformazioni PBW di T_B E # S_n / (R)

Parametrizza le mappe K-bilineari β: U -> K, calcola l'intersezione
(R ⊗_B E) ∩ (E ⊗_B R) in grado 3, impone la condizione β⊗Id = Id⊗β e
confronta lo spazio delle soluzioni con la famiglia (λ, ν).
"""

import asyncio
import logging
import random
from concurrent.futures import Executor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .groups import Perm, act_on_tuple, all_perms, conjugate_perm, identity_perm, is_transposition, perm_sign
from .quiver import DoubledQuiver
from .scalars import RowEchelon, Scalar, WreathPbwError, sparse_kernel, vec_add
from .wreathalg import (Vertex, WreathAlgebra, WreathElement, WreathMonomial, anchor, graded_block_dimensions,
                        multiply, multiply_monomials, relations_A)

logger = logging.getLogger(__name__)

Coordinate = Tuple[tuple, Perm]
Block = Tuple[Vertex, Vertex]


class PbwError(WreathPbwError):
    """Ipotesi non soddisfatte dal risolutore PBW"""


class IntersectionMismatchError(PbwError):
    """Gli elementi di tipo (1) e (2) non generano l'intersezione"""


def generator_keys(alg: WreathAlgebra) -> List[tuple]:
    keys = list(alg.r_keys())
    if alg.n >= 2:
        keys += alg.bracket_keys()
    return keys


# Mappe β

class BetaMap:
    """β come famiglia sparsa (chiave del generatore, σ) -> coefficiente

    Il valore su un generatore di testa h è Σ_σ β_σ · e_h σ.
    """

    def __init__(self, alg: WreathAlgebra, values: Optional[Dict[Coordinate, Scalar]] = None):
        self.alg = alg
        self.values: Dict[Coordinate, Scalar] = {}
        for coord, value in (values or {}).items():
            value = Scalar.coerce(value)
            if value:
                self.values[coord] = value

    def value(self, key: tuple) -> WreathElement:
        head, _ = self.alg.generator_head_tail(key)
        return WreathElement({anchor(head, sigma): c for (k, sigma), c in self.values.items() if k == key})

    def by_key(self) -> Dict[tuple, List[Tuple[Perm, Scalar]]]:
        grouped: Dict[tuple, List[Tuple[Perm, Scalar]]] = {}
        for (key, sigma), c in self.values.items():
            grouped.setdefault(key, []).append((sigma, c))
        return grouped

    def is_zero(self) -> bool:
        return not self.values

    def __add__(self, other: 'BetaMap') -> 'BetaMap':
        values = dict(self.values)
        for coord, c in other.values.items():
            values[coord] = values.get(coord, Scalar.zero()) + c
        return BetaMap(self.alg, values)

    def scale(self, factor) -> 'BetaMap':
        factor = Scalar.coerce(factor)
        return BetaMap(self.alg, {coord: c * factor for coord, c in self.values.items()})

    def is_equivariant(self) -> bool:
        for (key, sigma), c in self.values.items():
            for tau in all_perms(self.alg.n):
                new_key, sign = self.alg.conjugate_key(tau, key)
                image = self.values.get((new_key, conjugate_perm(tau, sigma)), Scalar.zero())
                if image != c * sign:
                    return False
        return True

    def to_json(self) -> List[Dict]:
        qbar = self.alg.qbar
        out = []
        for (key, sigma), c in sorted(self.values.items(), key=lambda kv: (repr(kv[0][0]), kv[0][1])):
            if key[0] == 'r':
                label = {'generator': 'r', 'vertex': list(key[1]), 'slot': key[2]}
            else:
                _, l, m, a, b, tail = key
                label = {'generator': 'bracket', 'slots': [l, m],
                         'letters': [qbar.letter_name(a), qbar.letter_name(b)], 'tail': list(tail)}
            out.append({**label, 'perm': list(sigma), 'value': str(c)})
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, BetaMap):
            return NotImplemented
        return self.values == other.values

    def __hash__(self):
        raise TypeError("BetaMap non è hashable")

    def __repr__(self) -> str:
        return f"BetaMap({len(self.values)} coefficienti)"


def beta_coordinates(alg: WreathAlgebra) -> List[Coordinate]:
    """Coppie (generatore, σ) con σ(coda) = testa: e_h σ e_t ≠ 0"""
    coords = []
    perms = all_perms(alg.n)
    for key in generator_keys(alg):
        head, tail = alg.generator_head_tail(key)
        for sigma in perms:
            if act_on_tuple(sigma, tail) == head:
                coords.append((key, sigma))
    return coords


@dataclass
class BetaSupport:
    """Coordinate libere: orbite di S_n sulle coppie (generatore, σ) con segno coerente"""
    alg: WreathAlgebra
    coordinates: List[Coordinate]
    orbits: List[Dict[Coordinate, int]]
    inconsistent: int
    key_directions: Dict[tuple, List[Tuple[int, Perm, int]]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.orbits)

    def direction(self, index: int) -> BetaMap:
        return BetaMap(self.alg, {coord: Scalar.rational(sign) for coord, sign in self.orbits[index].items()})

    def combine(self, params: Sequence) -> BetaMap:
        values: Dict[Coordinate, Scalar] = {}
        for index, x in enumerate(params):
            x = Scalar.coerce(x)
            if not x:
                continue
            for coord, sign in self.orbits[index].items():
                values[coord] = x if sign > 0 else -x
        return BetaMap(self.alg, values)

    def params_of(self, beta: BetaMap) -> List[Scalar]:
        """Coordinate di β nella base delle orbite; errore se β non è equivariante"""
        params = []
        for orbit in self.orbits:
            coord, sign = next(iter(orbit.items()))
            value = beta.values.get(coord, Scalar.zero())
            params.append(value if sign > 0 else -value)
        if self.combine(params) != beta:
            raise PbwError("β non appartiene allo spazio delle mappe K-bilineari equivarianti")
        return params


def beta_support_basis(qbar: DoubledQuiver, n: int) -> BetaSupport:
    """Orbite di (generatore, σ) sotto τ: β_{τστ⁻¹}(τ g τ⁻¹) = β_σ(g); orbite a segno incoerente scartate"""
    if n < 2:
        raise PbwError(f"La classificazione PBW richiede n >= 2, ricevuto {n}")
    alg = WreathAlgebra(qbar, n)
    coords = beta_coordinates(alg)
    perms = all_perms(n)
    seen = set()
    orbits: List[Dict[Coordinate, int]] = []
    inconsistent = 0
    for coord in coords:
        if coord in seen:
            continue
        key, sigma = coord
        orbit: Dict[Coordinate, int] = {}
        consistent = True
        for tau in perms:
            new_key, sign = alg.conjugate_key(tau, key)
            image = (new_key, conjugate_perm(tau, sigma))
            if image in orbit and orbit[image] != sign:
                consistent = False
            orbit.setdefault(image, sign)
        seen.update(orbit)
        if consistent:
            orbits.append(orbit)
        else:
            inconsistent += 1
    directions: Dict[tuple, List[Tuple[int, Perm, int]]] = {}
    for index, orbit in enumerate(orbits):
        for (key, sigma), sign in orbit.items():
            directions.setdefault(key, []).append((index, sigma, sign))
    logger.debug(f"Supporto di β per {qbar.base!r}, n={n}: {len(coords)} coordinate, "
                 f"{len(orbits)} orbite, {inconsistent} scartate")
    return BetaSupport(alg, coords, orbits, inconsistent, directions)


def beta_from_params(qbar: DoubledQuiver, n: int, lam=None, nu=0) -> BetaMap:
    """β letta dalle parti di grado 0 delle relazioni (i) e (ii)"""
    relations = relations_A(qbar, n, lam, nu)
    values: Dict[Coordinate, Scalar] = {}
    for relation in relations.relations:
        for mono, c in relation.lower.terms.items():
            values[(relation.key, mono.perm)] = c
    return BetaMap(relations.alg, values)


def family_directions(qbar: DoubledQuiver, n: int) -> List[BetaMap]:
    """Direzioni λ = e_i (per ogni vertice) e ν = 1"""
    directions = []
    for v in qbar.vertices:
        lam = [1 if w == v else 0 for w in qbar.vertices]
        directions.append(beta_from_params(qbar, n, lam, 0))
    directions.append(beta_from_params(qbar, n, None, 1))
    return directions


# Intersezione in grado 3

@dataclass
class OverlapBlock:
    """Blocco (testa, coda) di R⊗E e E⊗R con le coppie che li generano"""
    block: Block
    left_pairs: List[Tuple[tuple, WreathMonomial]] = field(default_factory=list)
    right_pairs: List[Tuple[WreathMonomial, tuple]] = field(default_factory=list)
    left: List[Dict] = field(default_factory=list)
    right: List[Dict] = field(default_factory=list)


@dataclass
class OverlapElement:
    vector: Dict[WreathMonomial, Scalar]
    left: List[Tuple[tuple, WreathMonomial, Scalar]]
    right: List[Tuple[WreathMonomial, tuple, Scalar]]


def overlap_blocks(alg: WreathAlgebra) -> List[OverlapBlock]:
    """Generatori g·e di R⊗_B E e e·g di E⊗_B R raggruppati per blocco"""
    blocks: Dict[Block, OverlapBlock] = {}
    qbar = alg.qbar
    for key in generator_keys(alg):
        generator = alg.generator(key)
        head, tail = alg.generator_head_tail(key)
        for slot in range(alg.n):
            for x in qbar.letters_into(tail[slot]):
                letter_tail = list(tail)
                letter_tail[slot] = qbar.tail(x)
                letter = alg.letter(slot, x, tuple(letter_tail))
                block = blocks.setdefault((head, letter.tail), OverlapBlock((head, letter.tail)))
                block.left_pairs.append((key, letter))
                block.left.append(dict(multiply(generator, WreathElement.monomial(letter)).terms))
            for x in qbar.letters_from(head[slot]):
                letter = alg.letter(slot, x, head)
                block = blocks.setdefault((letter.head, tail), OverlapBlock((letter.head, tail)))
                block.right_pairs.append((letter, key))
                block.right.append(dict(multiply(WreathElement.monomial(letter), generator).terms))
    return [blocks[b] for b in sorted(blocks)]


def intersect_block(block: OverlapBlock) -> List[OverlapElement]:
    """Nucleo di [sinistra | -destra] nel blocco; i generatori di ciascun lato sono indipendenti"""
    if not block.left or not block.right:
        return []
    rows: Dict[WreathMonomial, Dict] = {}
    for i, vector in enumerate(block.left):
        for mono, c in vector.items():
            rows.setdefault(mono, {})[('l', i)] = c
    for j, vector in enumerate(block.right):
        for mono, c in vector.items():
            rows.setdefault(mono, {})[('r', j)] = -c
    columns = [('l', i) for i in range(len(block.left))] + [('r', j) for j in range(len(block.right))]
    elements = []
    for kernel_vector in sparse_kernel(rows.values(), columns):
        vector: Dict[WreathMonomial, Scalar] = {}
        left, right = [], []
        for (side, i), c in kernel_vector.items():
            if side == 'l':
                key, letter = block.left_pairs[i]
                left.append((key, letter, c))
                vec_add(vector, block.left[i], c)
            else:
                letter, key = block.right_pairs[i]
                right.append((letter, key, c))
        if vector:
            elements.append(OverlapElement(vector, left, right))
    return elements


def compute_overlap(alg: WreathAlgebra) -> List[OverlapElement]:
    elements = []
    for block in overlap_blocks(alg):
        elements.extend(intersect_block(block))
    return elements


async def compute_overlap_async(alg: WreathAlgebra, executor: Executor) -> List[OverlapElement]:
    """Come compute_overlap, con un blocco per task nel pool; ordine dei blocchi conservato"""
    loop = asyncio.get_running_loop()
    blocks = overlap_blocks(alg)
    results = await asyncio.gather(*[loop.run_in_executor(executor, intersect_block, b) for b in blocks])
    return [element for chunk in results for element in chunk]


def _alternating_sum(alg: WreathAlgebra, letters: Sequence[Tuple[int, int]], tail: Vertex,
                     coeff: Scalar) -> WreathElement:
    terms: Dict[WreathMonomial, Scalar] = {}
    for order in permutations(range(len(letters))):
        sign = perm_sign(order)
        mono = alg.path(tuple(letters[i] for i in order), tail)
        terms[mono] = terms.get(mono, Scalar.zero()) + coeff * sign
    return WreathElement(terms)


def type_one_elements(alg: WreathAlgebra) -> List[WreathElement]:
    """⌊ε,η⌋ζ - ⌊ε,ζ⌋η + ⌊η,ζ⌋ε per lettere su tre slot distinti l < m < r"""
    qbar = alg.qbar
    elements = []
    for l in range(alg.n):
        for m in range(l + 1, alg.n):
            for r in range(m + 1, alg.n):
                for tail in alg.vertices:
                    for a in qbar.letters_from(tail[l]):
                        for b in qbar.letters_from(tail[m]):
                            for c in qbar.letters_from(tail[r]):
                                elements.append(_alternating_sum(alg, [(l, a), (m, b), (r, c)], tail,
                                                                 Scalar.one()))
    return elements


def type_two_elements(alg: WreathAlgebra) -> List[WreathElement]:
    """(Σ ε_i η_i) ζ - Σ ⌊ε_i, ζ⌋ η_i per r allo slot l e ζ allo slot m ≠ l"""
    qbar = alg.qbar
    elements = []
    for key in alg.r_keys():
        _, vertex, l = key
        generator = alg.generator(key)
        for m in range(alg.n):
            if m == l:
                continue
            for c in qbar.letters_into(vertex[m]):
                tail = list(vertex)
                tail[m] = qbar.tail(c)
                tail = tuple(tail)
                terms: Dict[WreathMonomial, Scalar] = {}
                for mono, coeff in generator.terms.items():
                    eps, eta = mono.letters
                    zeta = (m, c)
                    for letters, sign in (((eps, eta, zeta), 1), ((eps, zeta, eta), -1), ((zeta, eps, eta), 1)):
                        path = alg.path(letters, tail)
                        terms[path] = terms.get(path, Scalar.zero()) + coeff * sign
                elements.append(WreathElement(terms))
    return elements


def _in_span(echelon: RowEchelon, element: WreathElement) -> bool:
    return echelon.contains(dict(element.terms))


@dataclass
class IntersectionCertificate:
    quiver: str
    n: int
    brute_dim: int
    type_one: int
    type_two: int
    constructed_rank: int
    spans_equal: bool
    outside_hypotheses: bool
    elements: List[WreathElement] = field(default_factory=list, repr=False)
    overlap: List[OverlapElement] = field(default_factory=list, repr=False)

    def to_dict(self) -> Dict:
        return {'quiver': self.quiver, 'n': self.n, 'intersection_dim': self.brute_dim,
                'type_one': self.type_one, 'type_two': self.type_two,
                'constructed_rank': self.constructed_rank, 'spans_equal': self.spans_equal,
                'outside_hypotheses': self.outside_hypotheses}


def certify_intersection(alg: WreathAlgebra, overlap: List[OverlapElement]) -> IntersectionCertificate:
    qbar = alg.qbar
    type_one = type_one_elements(alg) if alg.n >= 3 else []
    type_two = type_two_elements(alg) if alg.n >= 2 else []
    constructed = type_one + type_two
    brute = RowEchelon()
    for element in overlap:
        brute.add(element.vector)
    built = RowEchelon()
    for element in constructed:
        built.add(dict(element.terms))
    spans_equal = (built.rank == brute.rank and all(_in_span(brute, e) for e in constructed))
    outside = qbar.base.has_loops()
    certificate = IntersectionCertificate(qbar.base.name or repr(qbar.base), alg.n, brute.rank, len(type_one),
                                          len(type_two), built.rank, spans_equal, outside,
                                          constructed, overlap)
    if not spans_equal:
        message = (f"Intersezione di dimensione {brute.rank}, elementi costruiti di rango {built.rank} "
                   f"per {qbar.base!r}, n={alg.n}")
        if outside:
            logger.warning(f"{message} (quiver con cappi, fuori dalle ipotesi del teorema)")
        else:
            raise IntersectionMismatchError(message)
    return certificate


def intersection_basis(qbar: DoubledQuiver, n: int) -> IntersectionCertificate:
    """Elementi di tipo (1) e (2) certificati contro l'intersezione calcolata per forza bruta"""
    if n < 1:
        raise PbwError(f"n deve essere almeno 1, ricevuto {n}")
    alg = WreathAlgebra(qbar, n)
    return certify_intersection(alg, compute_overlap(alg))


# Condizione β⊗Id = Id⊗β

def _residual_rows(overlap: Sequence[OverlapElement],
                   key_values: Dict[tuple, List[Tuple[object, Perm, Scalar]]],
                   alg: WreathAlgebra) -> Dict[Tuple[int, WreathMonomial], Dict[object, Scalar]]:
    """Σ c_i β(g_i) e_i - Σ d_j e'_j β(g'_j) per elemento, lineare nelle colonne di key_values"""
    rows: Dict[Tuple[int, WreathMonomial], Dict[object, Scalar]] = {}

    def add(index, mono, column, value):
        row = rows.setdefault((index, mono), {})
        new = row.get(column, Scalar.zero()) + value
        if new:
            row[column] = new
        else:
            row.pop(column, None)

    for index, element in enumerate(overlap):
        for key, letter, c in element.left:
            head, _ = alg.generator_head_tail(key)
            for column, sigma, value in key_values.get(key, ()):
                mono = multiply_monomials(anchor(head, sigma), letter)
                add(index, mono, column, c * value)
        for letter, key, d in element.right:
            head, _ = alg.generator_head_tail(key)
            for column, sigma, value in key_values.get(key, ()):
                mono = multiply_monomials(letter, anchor(head, sigma))
                add(index, mono, column, -d * value)
    return {k: row for k, row in rows.items() if row}


def bg_residual(beta: BetaMap, qbar: DoubledQuiver, n: int,
                overlap: Optional[List[OverlapElement]] = None) -> List[WreathElement]:
    """(β⊗Id - Id⊗β) su ogni elemento di base dell'intersezione"""
    alg = beta.alg
    if overlap is None:
        overlap = compute_overlap(alg)
    key_values = {key: [(None, sigma, c) for sigma, c in items] for key, items in beta.by_key().items()}
    residuals: List[Dict[WreathMonomial, Scalar]] = [{} for _ in overlap]
    for (index, mono), row in _residual_rows(overlap, key_values, alg).items():
        residuals[index][mono] = row[None]
    return [WreathElement(r) for r in residuals]


def residual_is_zero(residuals: Iterable[WreathElement]) -> bool:
    return all(r.is_zero() for r in residuals)


@dataclass
class AdmissibleReport:
    quiver: str
    n: int
    ambient_dim: int
    intersection_dim: int
    solution_dim: int
    expected_dim: int
    family_contained: bool
    family_rank: int
    spans_equal: bool
    outside_hypotheses: bool
    intersection: Optional[IntersectionCertificate] = None
    basis: List[BetaMap] = field(default_factory=list, repr=False)
    failures: List[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        if self.outside_hypotheses:
            return self.family_contained and self.family_rank == self.expected_dim
        return not self.failures

    def to_dict(self, include_basis: bool = True) -> Dict:
        report = {
            'quiver': self.quiver,
            'n': self.n,
            'ambient_dim': self.ambient_dim,
            'intersection_dim': self.intersection_dim,
            'solution_dim': self.solution_dim,
            'expected_dim': self.expected_dim,
            'family_contained': self.family_contained,
            'family_rank': self.family_rank,
            'spans_equal': self.spans_equal,
            'certified': self.certified,
            'outside_hypotheses': self.outside_hypotheses,
            'failures': list(self.failures),
        }
        if self.outside_hypotheses:
            report['note'] = "quiver con cappi: fuori dalle ipotesi del teorema di classificazione"
        if self.intersection is not None:
            report['intersection'] = self.intersection.to_dict()
        if include_basis:
            report['basis'] = [beta.to_json() for beta in self.basis]
        return report


def _solve(support: BetaSupport, overlap: List[OverlapElement], certificate: IntersectionCertificate) -> AdmissibleReport:
    alg = support.alg
    qbar = alg.qbar
    key_values = {key: [(index, sigma, Scalar.rational(sign)) for index, sigma, sign in items]
                  for key, items in support.key_directions.items()}
    rows = _residual_rows(overlap, key_values, alg)
    columns = list(range(len(support)))
    kernel = sparse_kernel(rows.values(), columns)
    basis = [support.combine([vec.get(j, Scalar.zero()) for j in columns]) for vec in kernel]

    kernel_echelon = RowEchelon()
    for vec in kernel:
        kernel_echelon.add(vec)
    family_echelon = RowEchelon()
    contained = True
    for beta in family_directions(qbar, alg.n):
        params = {j: x for j, x in enumerate(support.params_of(beta)) if x}
        family_echelon.add(params)
        if not kernel_echelon.contains(params):
            contained = False
    expected = qbar.num_vertices + 1
    spans_equal = contained and family_echelon.rank == kernel_echelon.rank
    failures = []
    if not contained:
        failures.append("la famiglia (λ, ν) non soddisfa la condizione β⊗Id = Id⊗β")
    if family_echelon.rank != expected:
        failures.append(f"le direzioni (λ, ν) hanno rango {family_echelon.rank}, atteso {expected}")
    if len(kernel) != expected:
        failures.append(f"dimensione delle soluzioni {len(kernel)}, attesa {expected}")
    outside = qbar.base.has_loops()
    report = AdmissibleReport(qbar.base.name or repr(qbar.base), alg.n, len(support), len(overlap), len(kernel),
                              expected, contained, family_echelon.rank, spans_equal, outside, certificate,
                              basis, failures)
    if failures:
        level = logging.WARNING if outside else logging.ERROR
        logger.log(level, f"Certificato PBW per {qbar.base!r}, n={alg.n}: {'; '.join(failures)}")
    else:
        logger.info(f"Certificato PBW per {qbar.base!r}, n={alg.n}: dimensione {len(kernel)}")
    return report


def _check_hypotheses(qbar: DoubledQuiver, n: int):
    if n < 2:
        raise PbwError(f"La classificazione PBW richiede n >= 2, ricevuto {n}")
    if not qbar.base.is_connected():
        raise PbwError(f"Il quiver {qbar.base!r} non è connesso")
    if qbar.base.has_loops():
        logger.warning(f"{qbar.base!r} ha cappi: risultato fuori dalle ipotesi del teorema di classificazione")


def solve_admissible(qbar: DoubledQuiver, n: int) -> AdmissibleReport:
    """Risolve β⊗Id = Id⊗β sulle coordinate libere e confronta con la famiglia (λ, ν)"""
    _check_hypotheses(qbar, n)
    support = beta_support_basis(qbar, n)
    overlap = compute_overlap(support.alg)
    certificate = certify_intersection(support.alg, overlap)
    return _solve(support, overlap, certificate)


async def solve_admissible_async(qbar: DoubledQuiver, n: int, executor: Executor) -> AdmissibleReport:
    _check_hypotheses(qbar, n)
    support = beta_support_basis(qbar, n)
    overlap = await compute_overlap_async(support.alg, executor)
    certificate = certify_intersection(support.alg, overlap)
    return _solve(support, overlap, certificate)


def random_beta(support: BetaSupport, rng: random.Random) -> BetaMap:
    params = [Scalar.rational(Fraction(rng.randint(-9, 9), rng.randint(1, 4))) for _ in range(len(support))]
    return support.combine(params)


def necessity_check(qbar: DoubledQuiver, n: int, rng: random.Random, samples: int = 10) -> Dict:
    """β casuali fuori dallo spazio delle soluzioni danno residuo non nullo"""
    support = beta_support_basis(qbar, n)
    overlap = compute_overlap(support.alg)
    solutions = RowEchelon()
    for beta in family_directions(qbar, n):
        solutions.add({j: x for j, x in enumerate(support.params_of(beta)) if x})
    tested, nonzero = 0, 0
    attempts = 0
    while tested < samples and attempts < 10 * samples:
        attempts += 1
        beta = random_beta(support, rng)
        params = {j: x for j, x in enumerate(support.params_of(beta)) if x}
        if solutions.contains(params):
            continue
        tested += 1
        if not residual_is_zero(bg_residual(beta, qbar, n, overlap)):
            nonzero += 1
    return {'samples': tested, 'nonzero_residuals': nonzero, 'passed': tested == nonzero == samples}


def non_transposition_beta(support: BetaSupport) -> Optional[BetaMap]:
    """Direzione di un'orbita di commutatori con σ né identità né trasposizione"""
    for index, orbit in enumerate(support.orbits):
        (key, sigma), _ = next(iter(orbit.items()))
        if key[0] == 'b' and sigma != identity_perm(len(sigma)) and not is_transposition(sigma):
            return support.direction(index)
    return None


def check_params(qbar: DoubledQuiver, n: int, lam=None, nu=0) -> Dict:
    """Residuo di β(λ, ν) su tutta l'intersezione"""
    beta = beta_from_params(qbar, n, lam, nu)
    residuals = bg_residual(beta, qbar, n)
    nonzero = [i for i, r in enumerate(residuals) if not r.is_zero()]
    constant_terms = sum(1 for r in residuals for mono in r.terms if mono.degree != 1)
    return {'quiver': qbar.base.name or repr(qbar.base), 'n': n,
            'lambda': [str(x) for x in _lambda_list(qbar, lam)], 'nu': str(Scalar.coerce(nu)),
            'intersection_dim': len(residuals), 'nonzero_residuals': len(nonzero),
            'constant_term_residuals': constant_terms, 'certified': not nonzero and not constant_terms}


def _lambda_list(qbar: DoubledQuiver, lam) -> List[Scalar]:
    if lam is None:
        return [Scalar.zero() for _ in qbar.vertices]
    if isinstance(lam, dict):
        return [Scalar.coerce(lam.get(v, 0)) for v in qbar.vertices]
    return [Scalar.coerce(x) for x in lam]


# Controllo di Koszul in grado basso

def _block_product(left: Dict[Block, int], right: Dict[Block, int]) -> Dict[Block, int]:
    result: Dict[Block, int] = {}
    for (h, v), a in left.items():
        for (w, t), b in right.items():
            if v == w and a and b:
                result[(h, t)] = result.get((h, t), 0) + a * b
    return result


def koszul_check(qbar: DoubledQuiver, n: int, degree: int = 3) -> Dict:
    """Σ_k (-1)^k h_{d-k} · h^!_k = 0 per blocchi (testa, coda), 1 <= d <= degree <= 3"""
    if not 1 <= degree <= 3:
        raise PbwError(f"Il controllo di Koszul è definito per gradi da 1 a 3, ricevuto {degree}")
    alg = WreathAlgebra(qbar, n)
    keys = generator_keys(alg)
    generators = [alg.generator(k) for k in keys]
    hilbert = graded_block_dimensions(alg, generators, degree)
    dual: List[Dict[Block, int]] = [{(v, v): 1 for v in alg.vertices}, {}, {}, {}]
    for mono in alg.paths(1):
        dual[1][(mono.head, mono.tail)] = dual[1].get((mono.head, mono.tail), 0) + 1
    for key in keys:
        block = alg.generator_head_tail(key)
        dual[2][block] = dual[2].get(block, 0) + 1
    if degree == 3:
        for element in compute_overlap(alg):
            mono = next(iter(element.vector))
            block = (mono.head, mono.tail)
            dual[3][block] = dual[3].get(block, 0) + 1
    failures = []
    for d in range(1, degree + 1):
        total: Dict[Block, int] = {}
        for k in range(d + 1):
            for block, value in _block_product(hilbert[d - k], dual[k]).items():
                total[block] = total.get(block, 0) + (-1) ** k * value
        bad = [block for block, value in total.items() if value]
        if bad:
            failures.append({'degree': d, 'blocks': [[list(h), list(t)] for h, t in bad[:5]]})
    return {
        'quiver': qbar.base.name or repr(qbar.base), 'n': n, 'degree': degree,
        'dual_dims': [sum(m.values()) for m in dual[:degree + 1]],
        'hilbert_dims': [sum(m.values()) for m in hilbert],
        'failures': failures, 'passed': not failures,
    }
