"""
Isomorfismo f^{⊗n} H_{t,c}(Γ_n) f^{⊗n} ≅ A_{n,λ,ν}

Intertwiner θ_a, φ_a tra le rappresentazioni irriducibili, identificazione
dell'angolo f^{⊗n}(TV # Γ_n)f^{⊗n} con T_B E # S_n, mappa dei parametri e
certificati: immagini delle relazioni, dimensioni dell'angolo, moltiplicatività.
"""

import asyncio
import logging
import random
from concurrent.futures import Executor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .groups import (FiniteSubgroupSL2, GammaN, GammaNElement, Matrix, MatrixUnits, cyclic_group, gamma_n_multiply,
                     kron, mat_identity, mat_mul, mckay_quiver)
from .quiver import DoubledQuiver, Quiver, double
from .scalars import ExactMatrix, RowEchelon, Scalar, WreathPbwError, kernel_basis
from .sra import SraAlgebra, SraElement, SraParams, letter_index, relations_R1_R2
from .wreathalg import (Vertex, WreathAlgebra, WreathElement, WreathMonomial, graded_dimension, multiply,
                        multiply_monomials, random_monomial, relations_A)

logger = logging.getLogger(__name__)


class MoritaError(WreathPbwError):
    """Verifica dell'isomorfismo di Morita non riuscita"""


class ScalingObstructionError(MoritaError):
    """Nessuna scelta di φ soddisfa normalizzazioni e relazione di mesh"""


# Algebra lineare degli intertwiner

def _scaled_identity(size: int, factor) -> Matrix:
    factor = Scalar.coerce(factor)
    return tuple(tuple(factor if i == j else Scalar.zero() for j in range(size)) for i in range(size))


def omega_contraction(delta: int) -> Matrix:
    """ω_L ⊗ Id: L⊗L⊗N -> N, indice (l1·2 + l2)·δ + p"""
    rows = []
    for p in range(delta):
        row = [Scalar.zero()] * (4 * delta)
        row[1 * delta + p] = Scalar.one()
        row[2 * delta + p] = -Scalar.one()
        rows.append(tuple(row))
    return tuple(rows)


def zeta_tensor(delta: int) -> Matrix:
    """ζ ⊗ Id: N -> L⊗L⊗N con ζ(1) = y⊗x - x⊗y"""
    rows = [[Scalar.zero()] * delta for _ in range(4 * delta)]
    for p in range(delta):
        rows[2 * delta + p][p] = Scalar.one()
        rows[1 * delta + p][p] = -Scalar.one()
    return tuple(tuple(r) for r in rows)


def _lift(matrix: Matrix) -> Matrix:
    return kron(mat_identity(2), matrix)


def _mat_add(a: Matrix, b: Matrix, factor=1) -> Matrix:
    factor = Scalar.coerce(factor)
    return tuple(tuple(x + y * factor for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _zero_matrix(rows: int, cols: int) -> Matrix:
    return tuple(tuple(Scalar.zero() for _ in range(cols)) for _ in range(rows))


def hom_basis(group: FiniteSubgroupSL2, source: int, target: int) -> List[Matrix]:
    """Base di Hom_Γ(N_source, L⊗N_target) come matrici 2δ_target x δ_source

    Ogni vettore ha la prima entrata non nulla uguale a 1.
    """
    rep_s, rep_t = group.irreps[source], group.irreps[target]
    rows, cols = 2 * rep_t.dim, rep_s.dim
    entries: Dict[Tuple[int, int], Scalar] = {}
    equation = 0
    for g in range(group.order):
        left = kron(group.elements[g], rep_t.matrices[g])
        right = rep_s.matrices[g]
        for r in range(rows):
            for c in range(cols):
                coeffs: Dict[int, Scalar] = {}
                for k in range(rows):
                    if left[r][k]:
                        coeffs[k * cols + c] = coeffs.get(k * cols + c, Scalar.zero()) + left[r][k]
                for k in range(cols):
                    if right[k][c]:
                        coeffs[r * cols + k] = coeffs.get(r * cols + k, Scalar.zero()) - right[k][c]
                for var, value in coeffs.items():
                    if value:
                        entries[(equation, var)] = value
                equation += 1
    basis = []
    for vector in kernel_basis(ExactMatrix(equation, rows * cols, entries)):
        pivot = next(v for v in vector if v)
        vector = [v / pivot for v in vector]
        basis.append(tuple(tuple(vector[r * cols + c] for c in range(cols)) for r in range(rows)))
    return basis


@dataclass
class ThetaPhi:
    """θ_a: N_t(a) -> L⊗N_h(a) e φ_a: N_h(a) -> L⊗N_t(a) per ogni spigolo del quiver di McKay"""
    group: FiniteSubgroupSL2
    quiver: Quiver
    delta: List[int]
    theta: List[Matrix]
    phi: List[Matrix]
    hom_dims: List[Tuple[int, int]] = field(default_factory=list)

    def letter_matrix(self, qbar: DoubledQuiver, letter: int) -> Matrix:
        """N_head(x) -> L⊗N_tail(x): φ per le lettere originali, θ per quelle stellate"""
        edge = qbar.edge_of(letter)
        return self.phi[edge] if qbar.is_original(letter) else self.theta[edge]

    def equivariance_failures(self) -> List[str]:
        group = self.group
        failures = []
        for a, (t, h) in enumerate(self.quiver.edges):
            rep_t, rep_h = group.irreps[t], group.irreps[h]
            for g in range(group.order):
                if mat_mul(kron(group.elements[g], rep_h.matrices[g]), self.theta[a]) != \
                        mat_mul(self.theta[a], rep_t.matrices[g]):
                    failures.append(f"θ_{a} non equivariante per {group.labels[g]}")
                    break
            for g in range(group.order):
                if mat_mul(kron(group.elements[g], rep_t.matrices[g]), self.phi[a]) != \
                        mat_mul(self.phi[a], rep_h.matrices[g]):
                    failures.append(f"φ_{a} non equivariante per {group.labels[g]}")
                    break
        return failures

    def pairing_failures(self) -> List[str]:
        failures = []
        for a, (t, h) in enumerate(self.quiver.edges):
            dt, dh = self.delta[t], self.delta[h]
            first = mat_mul(omega_contraction(dt), mat_mul(_lift(self.phi[a]), self.theta[a]))
            if first != _scaled_identity(dt, -dh):
                failures.append(f"(ω⊗1)(1⊗φ_{a})θ_{a} ≠ -δ_{h}")
            second = mat_mul(omega_contraction(dh), mat_mul(_lift(self.theta[a]), self.phi[a]))
            if second != _scaled_identity(dh, dt):
                failures.append(f"(ω⊗1)(1⊗θ_{a})φ_{a} ≠ δ_{t}")
        return failures

    def mesh(self, vertex: int) -> Matrix:
        d = self.delta[vertex]
        total = _zero_matrix(4 * d, d)
        for a, (t, h) in enumerate(self.quiver.edges):
            if h == vertex:
                total = _mat_add(total, mat_mul(_lift(self.theta[a]), self.phi[a]))
            if t == vertex:
                total = _mat_add(total, mat_mul(_lift(self.phi[a]), self.theta[a]), -1)
        return total

    def mesh_failures(self) -> List[str]:
        failures = []
        for i in self.quiver.vertices:
            expected = tuple(tuple(c * -self.delta[i] for c in row) for row in zeta_tensor(self.delta[i]))
            if self.mesh(i) != expected:
                failures.append(f"relazione di mesh violata al vertice {i}")
        return failures

    def verify(self) -> Dict[str, List[str]]:
        return {'equivariance': self.equivariance_failures(), 'pairing': self.pairing_failures(),
                'mesh': self.mesh_failures()}

    def to_dict(self) -> Dict:
        def render(matrix):
            return [[str(c) for c in row] for row in matrix]
        return {
            'group': self.group.name,
            'edges': [list(e) for e in self.quiver.edges],
            'delta': list(self.delta),
            'hom_dims': [list(d) for d in self.hom_dims],
            'theta': [render(m) for m in self.theta],
            'phi': [render(m) for m in self.phi],
        }


def solve_theta_phi(group: FiniteSubgroupSL2, mckay: Optional[Quiver] = None) -> ThetaPhi:
    """Intertwiner per il quiver di McKay di Γ; se dato, mckay deve coincidere con quello calcolato"""
    if mckay is not None and mckay != mckay_quiver(group)[0]:
        raise MoritaError(f"Il quiver {mckay!r} non è il quiver di McKay di {group.name}")
    return _solve_theta_phi(group)


@lru_cache(maxsize=None)
def _solve_theta_phi(group: FiniteSubgroupSL2) -> ThetaPhi:
    """θ_a fissato come vettore di base di Hom(N_t, L⊗N_h); φ_a risolto globalmente

    Le due normalizzazioni e la relazione di mesh sono lineari nei coefficienti di φ.
    """
    quiver, delta, _ = mckay_quiver(group)
    edges = quiver.edges
    thetas: List[Matrix] = []
    phi_bases: List[List[Matrix]] = []
    hom_dims = []
    parallel: Dict[Tuple[int, int], int] = {}
    for t, h in edges:
        index = parallel.get((t, h), 0)
        parallel[(t, h)] = index + 1
        theta_basis = hom_basis(group, t, h)
        phi_basis = hom_basis(group, h, t)
        if index >= len(theta_basis) or not phi_basis:
            raise MoritaError(f"Hom_Γ(N_{t}, L⊗N_{h}) ha dimensione {len(theta_basis)}, "
                              f"servono almeno {index + 1} monomorfismi")
        thetas.append(theta_basis[index])
        phi_bases.append(phi_basis)
        hom_dims.append((len(theta_basis), len(phi_basis)))
    unknowns = [(a, k) for a in range(len(edges)) for k in range(len(phi_bases[a]))]
    column = {u: i for i, u in enumerate(unknowns)}
    entries: Dict[Tuple[int, int], Scalar] = {}
    rhs: List[Scalar] = []

    def add_block(contributions: Sequence[Tuple[Tuple[int, int], Matrix]], target: Matrix):
        for r in range(len(target)):
            for c in range(len(target[0])):
                row = len(rhs)
                for unknown, matrix in contributions:
                    if matrix[r][c]:
                        key = (row, column[unknown])
                        entries[key] = entries.get(key, Scalar.zero()) + matrix[r][c]
                rhs.append(target[r][c])

    for a, (t, h) in enumerate(edges):
        first = [((a, k), mat_mul(omega_contraction(delta[t]), mat_mul(_lift(b), thetas[a])))
                 for k, b in enumerate(phi_bases[a])]
        add_block(first, _scaled_identity(delta[t], -delta[h]))
        second = [((a, k), mat_mul(omega_contraction(delta[h]), mat_mul(_lift(thetas[a]), b)))
                  for k, b in enumerate(phi_bases[a])]
        add_block(second, _scaled_identity(delta[h], delta[t]))
    for i in quiver.vertices:
        contributions = []
        for a, (t, h) in enumerate(edges):
            for k, b in enumerate(phi_bases[a]):
                if h == i:
                    contributions.append(((a, k), mat_mul(_lift(thetas[a]), b)))
                if t == i:
                    contributions.append(((a, k), tuple(tuple(-c for c in row)
                                                        for row in mat_mul(_lift(b), thetas[a]))))
        target = tuple(tuple(c * -delta[i] for c in row) for row in zeta_tensor(delta[i]))
        add_block(contributions, target)
    system = ExactMatrix(len(rhs), len(unknowns), {k: v for k, v in entries.items() if v})
    solution = system.solve(rhs)
    if solution is None:
        raise ScalingObstructionError(
            f"{group.name}: normalizzazioni e mesh incompatibili sugli spigoli {list(edges)} "
            f"({len(rhs)} equazioni, {len(unknowns)} incognite, rango {system.rank()})")
    phis = []
    for a in range(len(edges)):
        matrix = _zero_matrix(len(phi_bases[a][0]), len(phi_bases[a][0][0]))
        for k, b in enumerate(phi_bases[a]):
            matrix = _mat_add(matrix, b, solution[column[(a, k)]])
        phis.append(matrix)
    result = ThetaPhi(group, quiver, list(delta), thetas, phis, hom_dims)
    failures = [f for group_failures in result.verify().values() for f in group_failures]
    if failures:
        raise MoritaError(f"{group.name}: intertwiner non validi: {'; '.join(failures)}")
    logger.debug(f"Intertwiner risolti per {group.name}: {len(edges)} spigoli")
    return result


# Parametri

def parameter_map(group: FiniteSubgroupSL2, params: SraParams) -> Tuple[List[Scalar], Scalar]:
    """λ_i = t δ_i + Σ_{γ≠1} c′_γ χ_i(γ), ν = k |Γ| / 2"""
    lam = []
    for rep in group.irreps:
        value = params.t * rep.dim
        for g, c in params.cprime.items():
            value = value + c * rep.character[g]
        lam.append(value)
    nu = params.k * group.order / 2
    return lam, nu


# Identificazione dell'angolo

def f_power(units: MatrixUnits, gamma_n: GammaN) -> GammaNElement:
    return gamma_n.tensor([units.f_total] * gamma_n.n)


def corner_identify(group: FiniteSubgroupSL2, n: int) -> Dict:
    """Ranghi di f^{⊗n} C[Γ^n] f^{⊗n} e f^{⊗n}(V⊗C[Γ^n]) f^{⊗n} contro |I|^n e il numero di lettere"""
    units = MatrixUnits(group)
    gamma_n = GammaN(group, n)
    quiver, _, _ = mckay_quiver(group)
    qbar = double(quiver)
    big_f = f_power(units, gamma_n)
    sites = [key for key in gamma_n.elements() if key[1] == gamma_n.identity[1]]

    echelon = RowEchelon()
    for key in sites:
        echelon.add(gamma_n_multiply(gamma_n, gamma_n_multiply(gamma_n, big_f, {key: Scalar.one()}), big_f))
    basis_ok = True
    basis_echelon = RowEchelon()
    for labels in product(range(group.num_irreps), repeat=n):
        element = gamma_n.tensor([units.f[i] for i in labels])
        basis_echelon.add(element)
        if gamma_n_multiply(gamma_n, gamma_n_multiply(gamma_n, big_f, element), big_f) != element:
            basis_ok = False
    expected_b = group.num_irreps ** n

    sra = SraAlgebra(group, n, SraParams(group, 0, 0))
    f_element = sra.from_gamma_n(big_f)
    letter_echelon = RowEchelon()
    for letter in range(2 * n):
        for key in sites:
            element = sra.multiply(sra.multiply(f_element, SraElement({((letter,), key): 1})), f_element)
            letter_echelon.add(dict(element.terms))
    expected_e = n * group.num_irreps ** (n - 1) * qbar.num_letters

    report = {
        'group': group.name, 'n': n,
        'b_dim': echelon.rank, 'b_expected': expected_b,
        'b_basis_rank': basis_echelon.rank, 'b_basis_in_corner': basis_ok,
        'e_dim': letter_echelon.rank, 'e_expected': expected_e,
    }
    if echelon.rank != expected_b or basis_echelon.rank != expected_b or not basis_ok:
        raise MoritaError(f"Angolo di C[Γ^n] di dimensione {echelon.rank}, attesa {expected_b}")
    if letter_echelon.rank != expected_e:
        raise MoritaError(f"Angolo di V⊗C[Γ^n] di dimensione {letter_echelon.rank}, attesa {expected_e}")
    return report


class EmbeddingMap:
    """Generatori di T_B E # S_n mandati in f^{⊗n}(TV # Γ_n) f^{⊗n}

    e_v σ va in f_{v_1}⊗...⊗f_{v_n} σ; la lettera x allo slot l con coda w va in
    Σ_{m,p} Ψ_x[(m,p),0] · (m-esima lettera di L al sito l) · (f_{w_j} e E^{tail(x)}_{p,0} al sito l).
    """

    def __init__(self, thetaphi: ThetaPhi, sra: SraAlgebra, units: Optional[MatrixUnits] = None):
        if sra.group is not thetaphi.group:
            raise MoritaError("Intertwiner e algebra appartengono a gruppi diversi")
        self.thetaphi = thetaphi
        self.sra = sra
        self.units = units or MatrixUnits(thetaphi.group)
        self.qbar = double(thetaphi.quiver)
        self.alg = WreathAlgebra(self.qbar, sra.n)
        self._letters: Dict[Tuple[int, int, Vertex], SraElement] = {}

    @property
    def n(self) -> int:
        return self.sra.n

    def anchor_image(self, vertex: Vertex, perm=None) -> SraElement:
        sigma = tuple(perm) if perm is not None else self.sra.identity[1]
        tensor = self.sra.gamma_n.tensor([self.units.f[v] for v in vertex])
        return SraElement({((), (g, sigma)): c for (g, _), c in tensor.items()})

    def letter_image(self, slot: int, letter: int, tail: Vertex) -> SraElement:
        tail = tuple(tail)
        cached = self._letters.get((slot, letter, tail))
        if cached is not None:
            return cached
        if tail[slot] != self.qbar.tail(letter):
            raise MoritaError(f"La lettera {self.qbar.letter_name(letter)} non parte da {tail[slot]}")
        psi = self.thetaphi.letter_matrix(self.qbar, letter)
        source = self.qbar.tail(letter)
        delta = self.thetaphi.delta[source]
        image = SraElement()
        for m in range(2):
            for p in range(delta):
                coeff = psi[m * delta + p][0]
                if not coeff:
                    continue
                factors = [self.units.f[v] for v in tail]
                factors[slot] = self.units.unit(source, p, 0)
                for key, c in self.sra.gamma_n.tensor(factors).items():
                    image.add_term(((letter_index(slot, m),), key), coeff * c)
        self._letters[(slot, letter, tail)] = image
        return image

    def embed_monomial(self, mono: WreathMonomial) -> SraElement:
        """Immagine non ridotta di un monomio"""
        if not mono.letters:
            return self.anchor_image(mono.tail, mono.perm)
        vertex = list(mono.tail)
        images = []
        for slot, x in reversed(mono.letters):
            images.append(self.letter_image(slot, x, tuple(vertex)))
            vertex[slot] = self.qbar.head(x)
        result = images[-1]
        for image in reversed(images[:-1]):
            result = self.sra.multiply(result, image)
        if not mono.is_identity_perm():
            result = self.sra.multiply(result, self.sra.group_element(self.sra.gamma_n.perm_element(mono.perm)))
        return result

    def embed(self, element: WreathElement) -> SraElement:
        total = SraElement()
        for mono, coeff in element.terms.items():
            total = total + self.embed_monomial(mono).scale(coeff)
        return self.sra.normal_form(total)


# Certificati

def relation_residuals(embedding: EmbeddingMap, lam, nu) -> Tuple[int, List[str]]:
    """Immagini in forma normale delle relazioni (i) e (ii); restituisce (verificate, fallite)"""
    relations = relations_A(embedding.qbar, embedding.n, lam, nu)
    failures = []
    for relation in relations.relations:
        residual = embedding.embed(relation.element)
        if not residual.is_zero():
            failures.append(f"relazione ({relation.kind}) {relation.key}: {len(residual.terms)} termini residui")
    return len(relations), failures


def corner_dimensions(sra: SraAlgebra, units: MatrixUnits, degree: int) -> List[int]:
    """dim f^{⊗n} F_k(H) f^{⊗n} per k = 0..degree, dalle forme normali di tutte le parole"""
    big_f = f_power(units, sra.gamma_n)
    trivial_f = big_f == {sra.identity: Scalar.one()}
    f_element = sra.from_gamma_n(big_f)
    echelon = RowEchelon()
    dims = []
    elements = sra.gamma_n.elements()
    for k in range(degree + 1):
        for word in product(range(2 * sra.n), repeat=k):
            for g in elements:
                element = SraElement({(tuple(word), g): 1})
                if not trivial_f:
                    element = sra.multiply(sra.multiply(f_element, element), f_element)
                echelon.add(dict(sra.normal_form(element).terms))
        dims.append(echelon.rank)
    return dims


def expected_corner_dimensions(qbar: DoubledQuiver, n: int, degree: int) -> List[int]:
    """Somme parziali delle dimensioni graduate di Π_0^{⊗n} # S_n"""
    graded = graded_dimension(qbar, n, relations_A(qbar, n), degree)
    cumulative, total = [], 0
    for value in graded:
        total += value
        cumulative.append(total)
    return cumulative


def multiplicativity_check(embedding: EmbeddingMap, rng: random.Random, samples: int = 5,
                           max_degree: int = 2) -> Dict:
    """embed(xy) = nf(embed(x) embed(y)) su coppie casuali componibili"""
    alg = embedding.alg
    sra = embedding.sra
    checked, passed = 0, 0
    attempts = 0
    while checked < samples and attempts < 50 * samples:
        attempts += 1
        x = random_monomial(alg, rng, max_degree)
        y = random_monomial(alg, rng, max_degree)
        if multiply_monomials(x, y) is None:
            continue
        checked += 1
        left = embedding.embed(multiply(WreathElement.monomial(x), WreathElement.monomial(y)))
        right = sra.normal_form(sra.multiply(embedding.embed(WreathElement.monomial(x)),
                                             embedding.embed(WreathElement.monomial(y))))
        if left == right:
            passed += 1
    return {'samples': checked, 'passed': passed, 'ok': checked == passed == samples}


@dataclass
class MoritaReport:
    group: str
    n: int
    params: Dict
    lam: List[Scalar]
    nu: Scalar
    relations_checked: int
    relation_failures: List[str]
    corner_dims: List[int]
    expected_dims: List[int]
    multiplicativity: Dict
    thetaphi: Optional[ThetaPhi] = field(default=None, repr=False)

    @property
    def residual_zero(self) -> bool:
        return not self.relation_failures

    @property
    def dims_match(self) -> bool:
        return self.corner_dims == self.expected_dims

    @property
    def passed(self) -> bool:
        return self.residual_zero and self.dims_match and self.multiplicativity.get('ok', False)

    def to_dict(self) -> Dict:
        report = {
            'group': self.group,
            'n': self.n,
            'params': self.params,
            'lambda': [str(x) for x in self.lam],
            'nu': str(self.nu),
            'relations_checked': self.relations_checked,
            'residual_zero': self.residual_zero,
            'failing_relations': list(self.relation_failures),
            'corner_dims': list(self.corner_dims),
            'expected_dims': list(self.expected_dims),
            'multiplicativity': dict(self.multiplicativity),
            'pass': self.passed,
        }
        if self.thetaphi is not None:
            report['theta_phi'] = self.thetaphi.to_dict()
        return report


def _prepare(group: FiniteSubgroupSL2, n: int, params: SraParams):
    if n < 1:
        raise MoritaError(f"n deve essere almeno 1, ricevuto {n}")
    thetaphi = solve_theta_phi(group)
    units = MatrixUnits(group)
    sra = SraAlgebra(group, n, params)
    embedding = EmbeddingMap(thetaphi, sra, units)
    lam, nu = parameter_map(group, params)
    return thetaphi, units, sra, embedding, lam, nu


def _report(group, n, params, thetaphi, lam, nu, relations, dims, expected, mult) -> MoritaReport:
    checked, failures = relations
    report = MoritaReport(group.name, n, params.to_dict(), lam, nu, checked, failures, dims, expected, mult, thetaphi)
    if report.passed:
        logger.info(f"Isomorfismo di Morita verificato per {group.name}, n={n}")
    else:
        logger.error(f"Verifica di Morita fallita per {group.name}, n={n}: "
                     f"{len(failures)} relazioni, dimensioni {dims} contro {expected}")
    return report


def verify_morita(group: FiniteSubgroupSL2, n: int, params: SraParams, degree: int,
                  rng: Optional[random.Random] = None, samples: int = 5) -> MoritaReport:
    """I tre certificati dell'isomorfismo fino al grado dato"""
    rng = rng or random.Random(0)
    thetaphi, units, sra, embedding, lam, nu = _prepare(group, n, params)
    relations = relation_residuals(embedding, lam, nu)
    dims = corner_dimensions(sra, units, degree)
    expected = expected_corner_dimensions(embedding.qbar, n, degree)
    mult = multiplicativity_check(embedding, rng, samples)
    return _report(group, n, params, thetaphi, lam, nu, relations, dims, expected, mult)


async def verify_morita_async(group: FiniteSubgroupSL2, n: int, params: SraParams, degree: int,
                              executor: Executor, rng: Optional[random.Random] = None,
                              samples: int = 5) -> MoritaReport:
    """Come verify_morita, con i tre certificati eseguiti nel pool"""
    rng = rng or random.Random(0)
    loop = asyncio.get_running_loop()
    thetaphi, units, sra, embedding, lam, nu = _prepare(group, n, params)
    relations, dims, expected, mult = await asyncio.gather(
        loop.run_in_executor(executor, relation_residuals, embedding, lam, nu),
        loop.run_in_executor(executor, corner_dimensions, sra, units, degree),
        loop.run_in_executor(executor, expected_corner_dimensions, embedding.qbar, n, degree),
        loop.run_in_executor(executor, multiplicativity_check, embedding, rng, samples),
    )
    return _report(group, n, params, thetaphi, lam, nu, relations, dims, expected, mult)


# Degenerazione di Cherednik

def cherednik_dictionary(alg: WreathAlgebra, sra: SraAlgebra, element: WreathElement) -> SraElement:
    """a -> x, a* -> y allo stesso slot, e σ -> σ"""
    result = SraElement()
    for mono, coeff in element.terms.items():
        word = tuple(letter_index(slot, 0 if alg.qbar.is_original(x) else 1) for slot, x in mono.letters)
        result.add_term((word, ((0,) * alg.n, mono.perm)), coeff)
    return result


def cherednik_dictionary_check(n: int, t, k) -> Dict:
    """relations_A(Jordan, n, λ = t, ν = k/2) corrisponde biunivocamente a (R1)/(R2) con Γ = {1}"""
    group = cyclic_group(1)
    params = SraParams(group, t, k)
    quiver, _, _ = mckay_quiver(group)
    qbar = double(quiver)
    nu = params.k / 2
    relations = relations_A(qbar, n, [params.t], nu)
    sra = SraAlgebra(group, n, params)
    targets = [r for r in relations_R1_R2(group, n, params)
               if r.label.startswith('R1') or r.pair[0] // 2 < r.pair[1] // 2]
    unmatched_targets = list(range(len(targets)))
    unmatched = []
    for relation in relations.relations:
        image = cherednik_dictionary(relations.alg, sra, relation.element)
        match = next((i for i in unmatched_targets if targets[i].element == image), None)
        if match is None:
            unmatched.append(str(relation.key))
        else:
            unmatched_targets.remove(match)
    bijective = not unmatched and not unmatched_targets and len(relations) == len(targets)
    return {'n': n, 't': str(params.t), 'k': str(params.k), 'lambda': str(params.t), 'nu': str(nu),
            'relations': len(relations), 'targets': len(targets),
            'unmatched_relations': unmatched, 'unmatched_targets': [targets[i].label for i in unmatched_targets],
            'bijective': bijective}
