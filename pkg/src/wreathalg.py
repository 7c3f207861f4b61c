"""
Aritmetica in T_B E # S_n: cammini del quiver prodotto torti da S_n,
commutatore tra slot, morfismo Υ, relazioni delle algebre Π_λ e A_{n,λ,ν}
e dimensioni graduate troncate dei quozienti omogenei
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .groups import (Perm, act_on_tuple, all_perms, compose, conjugate_perm, identity_perm,
                     transposition)
from .quiver import DoubledQuiver, Quiver, double, moment_elements, reorient
from .scalars import RowEchelon, Scalar, WreathPbwError

logger = logging.getLogger(__name__)

Vertex = Tuple[int, ...]
Letter = Tuple[int, int]  # (slot, lettera del doppio)


class WreathAlgebraError(WreathPbwError):
    """Operazione non valida in T_B E # S_n"""


class WreathMonomial(NamedTuple):
    """Cammino dal vertice tail al vertice head seguito (a destra) da σ

    Le lettere sono in ordine di prodotto: l'ultima si applica per prima.
    """
    letters: Tuple[Letter, ...]
    head: Vertex
    tail: Vertex
    perm: Perm

    @property
    def degree(self) -> int:
        return len(self.letters)

    def is_identity_perm(self) -> bool:
        return all(i == p for i, p in enumerate(self.perm))


def anchor(vertex: Vertex, perm: Optional[Perm] = None) -> WreathMonomial:
    vertex = tuple(vertex)
    return WreathMonomial((), vertex, vertex, tuple(perm) if perm is not None else identity_perm(len(vertex)))


def conjugate_monomial(sigma: Perm, mono: WreathMonomial) -> WreathMonomial:
    """σ · m · σ⁻¹: la lettera allo slot l passa allo slot σ(l)"""
    letters = tuple((sigma[slot], x) for slot, x in mono.letters)
    return WreathMonomial(letters, act_on_tuple(sigma, mono.head), act_on_tuple(sigma, mono.tail),
                          conjugate_perm(sigma, mono.perm))


def multiply_monomials(p: WreathMonomial, q: WreathMonomial) -> Optional[WreathMonomial]:
    """(p, σ)(q, τ) = (p·σ(q), στ), None se i cammini non si compongono"""
    sigma = p.perm
    moved_head = act_on_tuple(sigma, q.head)
    if moved_head != p.tail:
        return None
    letters = p.letters + tuple((sigma[slot], x) for slot, x in q.letters)
    return WreathMonomial(letters, p.head, act_on_tuple(sigma, q.tail), compose(sigma, q.perm))


class WreathElement:
    """Combinazione lineare sparsa di WreathMonomial; nessun coefficiente nullo memorizzato"""

    __slots__ = ('terms',)

    def __init__(self, terms: Optional[Dict[WreathMonomial, Scalar]] = None):
        self.terms: Dict[WreathMonomial, Scalar] = {}
        for mono, coeff in (terms or {}).items():
            coeff = Scalar.coerce(coeff)
            if coeff:
                self.terms[mono] = coeff

    @classmethod
    def monomial(cls, mono: WreathMonomial, coeff=1) -> 'WreathElement':
        return cls({mono: coeff})

    @classmethod
    def zero(cls) -> 'WreathElement':
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def degrees(self) -> List[int]:
        return sorted({m.degree for m in self.terms})

    def part(self, degree: int) -> 'WreathElement':
        return WreathElement({m: c for m, c in self.terms.items() if m.degree == degree})

    def _combine(self, other: 'WreathElement', sign: int) -> 'WreathElement':
        result = dict(self.terms)
        for mono, coeff in other.terms.items():
            value = result.get(mono, Scalar.zero()) + (coeff if sign > 0 else -coeff)
            if value:
                result[mono] = value
            else:
                result.pop(mono, None)
        out = WreathElement()
        out.terms = result
        return out

    def __add__(self, other: 'WreathElement') -> 'WreathElement':
        return self._combine(other, 1)

    def __sub__(self, other: 'WreathElement') -> 'WreathElement':
        return self._combine(other, -1)

    def __neg__(self) -> 'WreathElement':
        out = WreathElement()
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def scale(self, factor) -> 'WreathElement':
        factor = Scalar.coerce(factor)
        return WreathElement({m: c * factor for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WreathElement):
            return multiply(self, other)
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def conjugate(self, sigma: Perm) -> 'WreathElement':
        return WreathElement({conjugate_monomial(sigma, m): c for m, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, WreathElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("WreathElement non è hashable")

    def __repr__(self) -> str:
        if not self.terms:
            return "WreathElement(0)"
        shown = ', '.join(f"{c}*{m.letters}@{m.tail}{m.perm}" for m, c in list(self.terms.items())[:4])
        more = '' if len(self.terms) <= 4 else f", ... (+{len(self.terms) - 4})"
        return f"WreathElement({shown}{more})"


def multiply(x: WreathElement, y: WreathElement) -> WreathElement:
    """Estensione bilineare del prodotto smash"""
    result: Dict[WreathMonomial, Scalar] = {}
    for p, cp in x.terms.items():
        for q, cq in y.terms.items():
            mono = multiply_monomials(p, q)
            if mono is None:
                continue
            value = result.get(mono, Scalar.zero()) + cp * cq
            if value:
                result[mono] = value
            else:
                result.pop(mono, None)
    out = WreathElement()
    out.terms = result
    return out


class WreathAlgebra:
    """Contesto (Q̄, n): costruisce lettere, generatori e relazioni"""

    def __init__(self, qbar: DoubledQuiver, n: int):
        if n < 1:
            raise WreathAlgebraError(f"n deve essere almeno 1, ricevuto {n}")
        self.qbar = qbar
        self.n = n
        self.identity = identity_perm(n)
        self._moments = moment_elements(qbar)

    @property
    def vertices(self) -> List[Vertex]:
        return list(product(self.qbar.vertices, repeat=self.n))

    def letter(self, slot: int, x: int, tail: Vertex) -> WreathMonomial:
        """Spigolo del quiver prodotto come monomio di grado 1"""
        tail = tuple(tail)
        if tail[slot] != self.qbar.tail(x):
            raise WreathAlgebraError(
                f"La lettera {self.qbar.letter_name(x)} non parte da {tail[slot]} allo slot {slot}")
        head = list(tail)
        head[slot] = self.qbar.head(x)
        return WreathMonomial(((slot, x),), tuple(head), tail, self.identity)

    def path(self, letters: Sequence[Letter], tail: Vertex, perm: Optional[Perm] = None) -> WreathMonomial:
        """Monomio da lettere in ordine di prodotto e vertice di coda"""
        vertex = list(tail)
        for slot, x in reversed(letters):
            if vertex[slot] != self.qbar.tail(x):
                raise WreathAlgebraError(f"Cammino non componibile allo slot {slot}")
            vertex[slot] = self.qbar.head(x)
        return WreathMonomial(tuple(letters), tuple(vertex), tuple(tail),
                              tuple(perm) if perm is not None else self.identity)

    def paths(self, length: int, tail: Optional[Vertex] = None) -> Iterator[WreathMonomial]:
        """Tutti i cammini del quiver prodotto di lunghezza data (permutazione identica)"""
        starts = [tuple(tail)] if tail is not None else self.vertices
        for start in starts:
            yield from self._extend((), start, start, length)

    def _extend(self, letters, head, tail, remaining) -> Iterator[WreathMonomial]:
        if remaining == 0:
            yield WreathMonomial(letters, head, tail, self.identity)
            return
        for slot in range(self.n):
            for x in self.qbar.letters_from(head[slot]):
                new_head = list(head)
                new_head[slot] = self.qbar.head(x)
                yield from self._extend(((slot, x),) + letters, tuple(new_head), tail, remaining - 1)

    def path_count(self, length: int) -> int:
        return sum(1 for _ in self.paths(length))

    # Generatori dello spazio delle relazioni quadratiche

    def r_generator(self, vertex: Vertex, slot: int) -> WreathElement:
        """e_{i1} ⊗ ... ⊗ r_{i_l} ⊗ ... ⊗ e_{in}"""
        vertex = tuple(vertex)
        terms = {}
        for (x1, x2), coeff in self._moments[vertex[slot]].items():
            terms[self.path(((slot, x1), (slot, x2)), vertex)] = coeff
        return WreathElement(terms)

    def bracket_letters(self, slot_l: int, a: int, slot_m: int, b: int, tail: Vertex) -> WreathElement:
        """⌊a_l, b_m⌋ = (a allo slot l)(b allo slot m) - (b allo slot m)(a allo slot l)"""
        if slot_l == slot_m:
            raise WreathAlgebraError("Il commutatore richiede slot distinti")
        tail = tuple(tail)
        first = self.path(((slot_l, a), (slot_m, b)), tail)
        second = self.path(((slot_m, b), (slot_l, a)), tail)
        return WreathElement({first: Scalar.one(), second: -Scalar.one()})

    def r_keys(self) -> List[tuple]:
        return [('r', v, slot) for v in self.vertices for slot in range(self.n)
                if self._moments[v[slot]]]

    def bracket_keys(self) -> List[tuple]:
        """Commutatori canonici (l < m) con tutte le etichette inattive"""
        keys = []
        for slot_l in range(self.n):
            for slot_m in range(slot_l + 1, self.n):
                for a in self.qbar.letters:
                    for b in self.qbar.letters:
                        for w in self.vertices:
                            if w[slot_l] == self.qbar.tail(a) and w[slot_m] == self.qbar.tail(b):
                                keys.append(('b', slot_l, slot_m, a, b, w))
        return keys

    def generator(self, key: tuple) -> WreathElement:
        if key[0] == 'r':
            return self.r_generator(key[1], key[2])
        _, slot_l, slot_m, a, b, tail = key
        return self.bracket_letters(slot_l, a, slot_m, b, tail)

    def generator_head_tail(self, key: tuple) -> Tuple[Vertex, Vertex]:
        if key[0] == 'r':
            return key[1], key[1]
        _, slot_l, slot_m, a, b, tail = key
        head = list(tail)
        head[slot_l] = self.qbar.head(a)
        head[slot_m] = self.qbar.head(b)
        return tuple(head), tail

    def conjugate_key(self, tau: Perm, key: tuple) -> Tuple[tuple, int]:
        """Chiave canonica e segno di τ g τ⁻¹"""
        if key[0] == 'r':
            _, v, slot = key
            return ('r', act_on_tuple(tau, v), tau[slot]), 1
        _, slot_l, slot_m, a, b, tail = key
        new_tail = act_on_tuple(tau, tail)
        new_l, new_m = tau[slot_l], tau[slot_m]
        if new_l < new_m:
            return ('b', new_l, new_m, a, b, new_tail), 1
        return ('b', new_m, new_l, b, a, new_tail), -1

    def anchor_element(self, vertex: Vertex, perm: Optional[Perm] = None, coeff=1) -> WreathElement:
        return WreathElement.monomial(anchor(vertex, perm), coeff)


def bracket(alg: WreathAlgebra, eps: Tuple[int, int, Vertex], eps_prime: Tuple[int, int, Vertex]) -> WreathElement:
    """⌊ε, ε'⌋ per spigoli ε = (l, a, coda) e ε' = (m, b, coda) con coda(ε) = testa(ε')"""
    slot_l, a, tail_e = eps
    slot_m, b, tail_p = eps_prime
    if slot_l == slot_m:
        raise WreathAlgebraError("Il commutatore richiede slot distinti")
    first = alg.letter(slot_l, a, tail_e)
    second = alg.letter(slot_m, b, tail_p)
    if first.tail != second.head:
        raise WreathAlgebraError("Etichette inattive incompatibili nel commutatore")
    return alg.bracket_letters(slot_l, a, slot_m, b, second.tail)


# Morfismo Υ

UpsilonKey = Tuple[Tuple[Tuple[int, ...], int, int], ...]


def upsilon_monomial(mono: WreathMonomial, n: int) -> UpsilonKey:
    if not mono.is_identity_perm():
        raise WreathAlgebraError("Υ è definito solo su monomi con permutazione identica")
    return tuple((tuple(x for slot, x in mono.letters if slot == s), mono.head[s], mono.tail[s])
                 for s in range(n))


def upsilon(x: WreathElement, n: int) -> Dict[UpsilonKey, Scalar]:
    """Υ: T_B E -> (T_B E)^{⊗n}, riordina le lettere slot per slot"""
    result: Dict[UpsilonKey, Scalar] = {}
    for mono, coeff in x.terms.items():
        key = upsilon_monomial(mono, n)
        value = result.get(key, Scalar.zero()) + coeff
        if value:
            result[key] = value
        else:
            result.pop(key, None)
    return result


def tensor_multiply(u: Dict[UpsilonKey, Scalar], v: Dict[UpsilonKey, Scalar]) -> Dict[UpsilonKey, Scalar]:
    """Prodotto nel prodotto tensoriale delle algebre dei cammini"""
    result: Dict[UpsilonKey, Scalar] = {}
    for ku, cu in u.items():
        for kv, cv in v.items():
            if any(fu[2] != fv[1] for fu, fv in zip(ku, kv)):
                continue
            key = tuple((fu[0] + fv[0], fu[1], fv[2]) for fu, fv in zip(ku, kv))
            value = result.get(key, Scalar.zero()) + cu * cv
            if value:
                result[key] = value
            else:
                result.pop(key, None)
    return result


def upsilon_kernel_rank(alg: WreathAlgebra) -> Dict[str, int]:
    """Rango del nucleo di Υ in grado 2 confrontato con il numero di commutatori"""
    monomials = list(alg.paths(2))
    echelon = RowEchelon()
    for mono in monomials:
        echelon.add({upsilon_monomial(mono, alg.n): Scalar.one()})
    kernel_dim = len(monomials) - echelon.rank
    brackets = alg.bracket_keys()
    in_kernel = sum(1 for key in brackets if not upsilon(alg.generator(key), alg.n))
    bracket_echelon = RowEchelon()
    for key in brackets:
        bracket_echelon.add(dict(alg.generator(key).terms))
    return {'kernel_dim': kernel_dim, 'bracket_count': len(brackets),
            'bracket_rank': bracket_echelon.rank, 'brackets_in_kernel': in_kernel}


# Relazioni

@dataclass
class Relation:
    kind: str  # 'i' oppure 'ii'
    key: tuple
    element: WreathElement
    leading: WreathElement
    lower: WreathElement


@dataclass
class RelationSet:
    alg: WreathAlgebra
    relations: List[Relation]
    lam: Dict[int, Scalar]
    nu: Scalar

    def elements(self) -> List[WreathElement]:
        return [r.element for r in self.relations]

    def leading_parts(self) -> List[WreathElement]:
        return [r.leading for r in self.relations if not r.leading.is_zero()]

    def is_homogeneous(self) -> bool:
        return all(r.lower.is_zero() for r in self.relations)

    def __len__(self) -> int:
        return len(self.relations)


def normalize_lambda(qbar: DoubledQuiver, lam) -> Dict[int, Scalar]:
    if lam is None:
        return {v: Scalar.zero() for v in qbar.vertices}
    if isinstance(lam, dict):
        return {v: Scalar.coerce(lam.get(v, 0)) for v in qbar.vertices}
    values = list(lam)
    if len(values) != qbar.num_vertices:
        raise WreathAlgebraError(f"λ ha {len(values)} componenti, attese {qbar.num_vertices}")
    return {v: Scalar.coerce(values[v]) for v in qbar.vertices}


def bracket_rhs_sign(qbar: DoubledQuiver, a: int, b: int) -> int:
    """+1 se a = b* con b in Q, -1 se b = a* con a in Q, altrimenti 0"""
    if a == qbar.star(b) and qbar.is_original(b):
        return 1
    if b == qbar.star(a) and qbar.is_original(a):
        return -1
    return 0


def type_i_lower(alg: WreathAlgebra, vertex: Vertex, slot: int, lam: Dict[int, Scalar], nu: Scalar) -> WreathElement:
    """λ_{i_l} e_v + ν Σ_{j≠l, i_j=i_l} e_v s_{jl}"""
    terms = {}
    label = vertex[slot]
    if lam[label]:
        terms[anchor(vertex)] = lam[label]
    if nu:
        for j in range(alg.n):
            if j != slot and vertex[j] == label:
                terms[anchor(vertex, transposition(alg.n, j, slot))] = nu
    return WreathElement(terms)


def type_ii_lower(alg: WreathAlgebra, key: tuple, nu: Scalar) -> WreathElement:
    _, slot_l, slot_m, a, b, tail = key
    sign = bracket_rhs_sign(alg.qbar, a, b)
    if not sign or not nu:
        return WreathElement()
    head, _ = alg.generator_head_tail(key)
    return WreathElement({anchor(head, transposition(alg.n, slot_l, slot_m)): nu * sign})


def relations_A(qbar: DoubledQuiver, n: int, lam=None, nu=0) -> RelationSet:
    """Insieme generatore finito delle relazioni (i) e (ii); per n = 1 solo quelle di Π_λ"""
    alg = WreathAlgebra(qbar, n)
    lam = normalize_lambda(qbar, lam)
    nu = Scalar.coerce(nu)
    relations = []
    for key in alg.r_keys():
        _, vertex, slot = key
        leading = alg.r_generator(vertex, slot)
        lower = type_i_lower(alg, vertex, slot, lam, nu)
        relations.append(Relation('i', key, leading - lower, leading, lower))
    if n >= 2:
        for key in alg.bracket_keys():
            leading = alg.generator(key)
            lower = type_ii_lower(alg, key, nu)
            relations.append(Relation('ii', key, leading - lower, leading, lower))
    logger.debug(f"Relazioni generate per {qbar.base!r}, n={n}: {len(relations)}")
    return RelationSet(alg, relations, lam, nu)


def free_relations(qbar: DoubledQuiver, n: int) -> RelationSet:
    return RelationSet(WreathAlgebra(qbar, n), [], normalize_lambda(qbar, None), Scalar.zero())


# Dimensioni graduate

def _element_key(element: WreathElement) -> frozenset:
    return frozenset((m, c.to_json()) for m, c in element.terms.items())


def _conjugation_closure(alg: WreathAlgebra, generators: Iterable[WreathElement]) -> List[WreathElement]:
    closed = []
    seen = set()
    for g in generators:
        for sigma in all_perms(alg.n):
            conj = g.conjugate(sigma)
            key = _element_key(conj)
            if key in seen or _element_key(-conj) in seen:
                continue
            seen.add(key)
            closed.append(conj)
    return closed


def graded_block_dimensions(alg: WreathAlgebra, generators: Sequence[WreathElement],
                            degree: int) -> List[Dict[Tuple[Vertex, Vertex], int]]:
    """Dimensioni per blocco (testa, coda) del quoziente di T_B E per l'ideale generato

    I generatori devono essere omogenei di grado 2 con permutazione identica.
    """
    for g in generators:
        if g.degrees() != [2] or any(not m.is_identity_perm() for m in g.terms):
            raise WreathAlgebraError("graded_dimension richiede generatori omogenei di grado 2")
    split = []
    for g in generators:
        mono = next(iter(g.terms))
        split.append((mono.head, mono.tail, g))
    by_length: List[Dict[str, Dict[Vertex, List[WreathMonomial]]]] = []
    result = []
    for k in range(degree + 1):
        paths = list(alg.paths(k))
        by_head: Dict[Vertex, List[WreathMonomial]] = {}
        by_tail: Dict[Vertex, List[WreathMonomial]] = {}
        counts: Dict[Tuple[Vertex, Vertex], int] = {}
        for p in paths:
            by_head.setdefault(p.head, []).append(p)
            by_tail.setdefault(p.tail, []).append(p)
            counts[(p.head, p.tail)] = counts.get((p.head, p.tail), 0) + 1
        by_length.append({'head': by_head, 'tail': by_tail})
        echelons: Dict[Tuple[Vertex, Vertex], RowEchelon] = {}
        if k >= 2:
            for left_len in range(k - 1):
                right_len = k - 2 - left_len
                for g_head, g_tail, g in split:
                    lefts = by_length[left_len]['tail'].get(g_head, [])
                    rights = by_length[right_len]['head'].get(g_tail, [])
                    for x in lefts:
                        for y in rights:
                            vector = {}
                            for mono, coeff in g.terms.items():
                                vector[(x.letters + mono.letters + y.letters, y.tail)] = coeff
                            block = (x.head, y.tail)
                            echelons.setdefault(block, RowEchelon()).add(vector)
        dims = {}
        for block, count in counts.items():
            rank = echelons[block].rank if block in echelons else 0
            dims[block] = count - rank
        result.append(dims)
    return result


def graded_dimension(qbar: DoubledQuiver, n: int, relations: Optional[RelationSet], degree: int) -> List[int]:
    """dim_k = (#cammini di lunghezza k - rango dell'ideale in grado k) · n!

    Si usano le parti direttrici delle relazioni chiuse per coniugio con S_n.
    """
    alg = WreathAlgebra(qbar, n)
    generators: List[WreathElement] = []
    if relations is not None and relations.relations:
        if not relations.is_homogeneous():
            logger.debug("Relazioni non omogenee: si usano le parti direttrici")
        generators = _conjugation_closure(alg, relations.leading_parts())
    blocks = graded_block_dimensions(alg, generators, degree)
    return [sum(b.values()) * factorial(n) for b in blocks]


def orientation_twist(qbar: DoubledQuiver, flip_set, inverse: bool = False):
    """Mappa delle lettere: per gli spigoli invertiti a -> a*, a* -> -a"""
    flips = set(flip_set)

    def image(x: int) -> Tuple[int, int]:
        if qbar.edge_of(x) not in flips:
            return x, 1
        if not inverse:
            return (x ^ 1, 1) if qbar.is_original(x) else (x ^ 1, -1)
        return (x ^ 1, -1) if qbar.is_original(x) else (x ^ 1, 1)

    return image


def apply_letter_map(element: WreathElement, image) -> WreathElement:
    terms = {}
    for mono, coeff in element.terms.items():
        sign = 1
        letters = []
        for slot, x in mono.letters:
            y, s = image(x)
            sign *= s
            letters.append((slot, y))
        new = WreathMonomial(tuple(letters), mono.head, mono.tail, mono.perm)
        terms[new] = terms.get(new, Scalar.zero()) + coeff * sign
    return WreathElement(terms)


def _span_contains(basis: Sequence[WreathElement], candidates: Sequence[WreathElement]) -> bool:
    echelon = RowEchelon()
    for b in basis:
        echelon.add(dict(b.terms))
    return all(echelon.contains(dict(c.terms)) for c in candidates)


def default_generic_parameters(num_vertices: int) -> Tuple[List[Scalar], Scalar]:
    return [Scalar.rational(Fraction(v + 2, 3)) for v in range(num_vertices)], Scalar.rational(Fraction(5, 7))


def orientation_iso_check(quiver: Quiver, flip_set, n: int = 2, lam=None, nu=None) -> bool:
    """Il twist di segno manda le relazioni di Q nello span di quelle di Q riorientato e viceversa"""
    if lam is None or nu is None:
        generic_lam, generic_nu = default_generic_parameters(quiver.num_vertices)
        lam = generic_lam if lam is None else lam
        nu = generic_nu if nu is None else nu
    flipped = reorient(quiver, flip_set)
    qbar, qbar_flipped = double(quiver), double(flipped)
    original = relations_A(qbar, n, lam, nu).elements()
    target = relations_A(qbar_flipped, n, lam, nu).elements()
    forward = [apply_letter_map(r, orientation_twist(qbar, flip_set)) for r in original]
    backward = [apply_letter_map(r, orientation_twist(qbar, flip_set, inverse=True)) for r in target]
    ok = _span_contains(target, forward) and _span_contains(original, backward)
    logger.debug(f"Controllo indipendenza dall'orientazione ({sorted(set(flip_set))}): {ok}")
    return ok


def random_monomial(alg: WreathAlgebra, rng: random.Random, max_degree: int,
                    with_perm: bool = True) -> WreathMonomial:
    """Monomio casuale: cammino casuale da un vertice casuale, permutazione casuale"""
    vertices = alg.vertices
    tail = rng.choice(vertices)
    head = list(tail)
    letters: Tuple[Letter, ...] = ()
    for _ in range(rng.randint(0, max_degree)):
        options = [(slot, x) for slot in range(alg.n) for x in alg.qbar.letters_from(head[slot])]
        if not options:
            break
        slot, x = rng.choice(options)
        head[slot] = alg.qbar.head(x)
        letters = ((slot, x),) + letters
    perm = tuple(rng.choice(all_perms(alg.n))) if with_perm else alg.identity
    return WreathMonomial(letters, tuple(head), tuple(tail), perm)


def random_element(alg: WreathAlgebra, rng: random.Random, max_degree: int, terms: int = 3) -> WreathElement:
    result = {}
    for _ in range(terms):
        mono = random_monomial(alg, rng, max_degree)
        result[mono] = Scalar.rational(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
    return WreathElement(result)
