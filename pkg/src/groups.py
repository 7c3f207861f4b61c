"""
Sottogruppi finiti di SL2 con rappresentazioni irriducibili esplicite,
quiver di McKay, unità matriciali e algebra del gruppo Γ_n = S_n ⋉ Γ^n
"""

import logging
from itertools import permutations, product
from typing import Dict, List, Optional, Sequence, Tuple

from .quiver import Quiver
from .scalars import Scalar, WreathPbwError

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]
Matrix = Tuple[Tuple[Scalar, ...], ...]
GroupAlgebraElement = Dict[int, Scalar]
GammaNKey = Tuple[Tuple[int, ...], Perm]
GammaNElement = Dict[GammaNKey, Scalar]


class GroupError(WreathPbwError):
    """Errore nella costruzione o verifica di un gruppo"""


# Permutazioni: tuple p con p[i] = σ(i), (στ)(i) = σ(τ(i))

def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[q[i]] for i in range(len(q)))


def inverse_perm(p: Perm) -> Perm:
    result = [0] * len(p)
    for i, image in enumerate(p):
        result[image] = i
    return tuple(result)


def transposition(n: int, i: int, j: int) -> Perm:
    p = list(range(n))
    p[i], p[j] = j, i
    return tuple(p)


def conjugate_perm(tau: Perm, sigma: Perm) -> Perm:
    """τ σ τ⁻¹"""
    return compose(tau, compose(sigma, inverse_perm(tau)))


def act_on_tuple(p: Perm, values: Sequence) -> tuple:
    """σ(v)_j = v_{σ⁻¹(j)}: la componente i finisce nella posizione σ(i)"""
    result = [None] * len(values)
    for i, value in enumerate(values):
        result[p[i]] = value
    return tuple(result)


def all_perms(n: int) -> List[Perm]:
    return [tuple(p) for p in permutations(range(n))]


def perm_sign(p: Perm) -> int:
    sign = 1
    seen = [False] * len(p)
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = p[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def is_transposition(p: Perm) -> bool:
    return sum(1 for i, image in enumerate(p) if i != image) == 2


# Matrici piccole di Scalar

def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0])
    zero = Scalar.zero()
    result = []
    for i in range(rows):
        row = []
        for j in range(cols):
            total = zero
            for k in range(inner):
                if a[i][k] and b[k][j]:
                    total = total + a[i][k] * b[k][j]
            row.append(total)
        result.append(tuple(row))
    return tuple(result)


def mat_identity(size: int) -> Matrix:
    return tuple(tuple(Scalar.one() if i == j else Scalar.zero() for j in range(size)) for i in range(size))


def mat_power(a: Matrix, exponent: int) -> Matrix:
    result = mat_identity(len(a))
    for _ in range(exponent):
        result = mat_mul(result, a)
    return result


def mat_from(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Scalar.coerce(v) for v in row) for row in rows)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Prodotto di Kronecker; l'indice di riga di a è il più significativo"""
    rows = []
    for i in range(len(a)):
        for p in range(len(b)):
            rows.append(tuple(a[i][j] * b[p][q] for j in range(len(a[0])) for q in range(len(b[0]))))
    return tuple(rows)


def trace(a: Matrix) -> Scalar:
    total = Scalar.zero()
    for i in range(len(a)):
        total = total + a[i][i]
    return total


def mat_vec(a: Matrix, u: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    return tuple(sum((a[i][j] * u[j] for j in range(len(u))), Scalar.zero()) for i in range(len(a)))


def omega_L(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    """Forma simplettica su L nella base (x, y): ω(x, y) = 1"""
    return u[0] * v[1] - u[1] * v[0]


class Irrep:
    """Rappresentazione irriducibile con matrici esplicite, indicizzate per elemento"""

    def __init__(self, label: str, dim: int, matrices: List[Matrix]):
        self.label = label
        self.dim = dim
        self.matrices = matrices
        self.character = [trace(m) for m in matrices]

    def __repr__(self) -> str:
        return f"Irrep({self.label}, dim={self.dim})"


class FiniteSubgroupSL2:
    """Sottogruppo finito di SL2 come tabella di Cayley sugli indici degli elementi

    Gli elementi agiscono su L per moltiplicazione di vettori colonna nella base
    (x, y). L'elemento 0 è l'identità e l'irriducibile 0 è la banale.
    """

    def __init__(self, name: str, elements: List[Matrix], labels: List[str],
                 conductor: int, irreps: List[Irrep]):
        self.name = name
        self.elements = elements
        self.labels = labels
        self.conductor = conductor
        self.irreps = irreps
        self.order = len(elements)
        self._index = {self._key(m): i for i, m in enumerate(elements)}
        if len(self._index) != self.order:
            raise GroupError(f"{name}: elementi ripetuti")
        self.identity = self._index.get(self._key(mat_identity(2)))
        if self.identity != 0:
            raise GroupError(f"{name}: l'identità deve essere l'elemento 0")
        self.table = [[self._lookup(mat_mul(a, b)) for b in elements] for a in elements]
        self.inverses = [row.index(0) for row in self.table]
        self._verify()
        logger.debug(f"Gruppo {name} costruito: ordine {self.order}, {len(irreps)} irriducibili")

    def _key(self, matrix: Matrix) -> tuple:
        return tuple(entry.lift(self.conductor).coeffs for row in matrix for entry in row)

    def _lookup(self, matrix: Matrix) -> int:
        key = self._key(matrix)
        if key not in self._index:
            raise GroupError(f"{self.name}: insieme non chiuso per prodotto")
        return self._index[key]

    def _verify(self):
        x = (Scalar.one(), Scalar.zero())
        y = (Scalar.zero(), Scalar.one())
        for i, m in enumerate(self.elements):
            det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
            if det != 1:
                raise GroupError(f"{self.name}: l'elemento {self.labels[i]} ha determinante {det}")
            if omega_L(mat_vec(m, x), mat_vec(m, y)) != 1:
                raise GroupError(f"{self.name}: l'elemento {self.labels[i]} non conserva ω_L")
        if sum(rep.dim ** 2 for rep in self.irreps) != self.order:
            raise GroupError(f"{self.name}: la somma dei quadrati delle dimensioni non è |Γ|")
        for rep in self.irreps:
            for a in range(self.order):
                for b in range(self.order):
                    if mat_mul(rep.matrices[a], rep.matrices[b]) != rep.matrices[self.table[a][b]]:
                        raise GroupError(f"{self.name}: {rep.label} non è un omomorfismo")
        for i, rep_i in enumerate(self.irreps):
            for j, rep_j in enumerate(self.irreps):
                value = self.character_product(rep_i.character, rep_j.character)
                if value != (1 if i == j else 0):
                    raise GroupError(f"{self.name}: caratteri {rep_i.label}, {rep_j.label} non ortonormali")

    def mult(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    @property
    def num_irreps(self) -> int:
        return len(self.irreps)

    @property
    def dims(self) -> List[int]:
        return [rep.dim for rep in self.irreps]

    def natural_character(self) -> List[Scalar]:
        return [trace(m) for m in self.elements]

    def character_product(self, chi: Sequence[Scalar], psi: Sequence[Scalar]) -> Scalar:
        """(1/|Γ|) Σ χ(γ) ψ(γ⁻¹)"""
        total = Scalar.zero()
        for g in range(self.order):
            total = total + chi[g] * psi[self.inverses[g]]
        return total / self.order

    def conjugacy_classes(self) -> List[List[int]]:
        classes = []
        assigned = set()
        for g in range(self.order):
            if g in assigned:
                continue
            orbit = sorted({self.table[self.table[h][g]][self.inverses[h]] for h in range(self.order)})
            assigned.update(orbit)
            classes.append(orbit)
        return classes

    def class_representatives(self) -> List[int]:
        return [cls[0] for cls in self.conjugacy_classes()]

    def class_of(self, g: int) -> List[int]:
        for cls in self.conjugacy_classes():
            if g in cls:
                return cls
        raise GroupError(f"Elemento {g} fuori dal gruppo")

    def __repr__(self) -> str:
        return f"FiniteSubgroupSL2({self.name}, ordine {self.order})"


def cyclic_group(l: int) -> FiniteSubgroupSL2:
    """Z/l generato da diag(ζ_l, ζ_l⁻¹), con gli l caratteri χ_i(g^k) = ζ_l^{ik}"""
    if l < 1:
        raise GroupError(f"Ordine ciclico non valido: {l}")
    zero = Scalar.zero()
    elements = [((Scalar.zeta(l, k), zero), (zero, Scalar.zeta(l, -k))) for k in range(l)]
    labels = ['1'] + [f"g^{k}" for k in range(1, l)]
    irreps = [Irrep(f"chi{i}", 1, [((Scalar.zeta(l, i * k),),) for k in range(l)]) for i in range(l)]
    return FiniteSubgroupSL2(f"cyclic:{l}", elements, labels, l, irreps)


def binary_dihedral(l: int) -> FiniteSubgroupSL2:
    """Gruppo binario diedrale di ordine 4l generato da A = diag(ζ_2l, ζ_2l⁻¹) e B = [[0,1],[-1,0]]"""
    if l < 2:
        raise GroupError(f"Parametro diedrale non valido: {l} (minimo 2)")
    m = 4 * l
    w = Scalar.zeta(m, 2)
    w_inv = Scalar.zeta(m, -2)
    zero, one = Scalar.zero(), Scalar.one()
    gen_a = ((w, zero), (zero, w_inv))
    gen_b = ((zero, one), (-one, zero))
    words = [(k, e) for e in (0, 1) for k in range(2 * l)]
    elements = [mat_mul(mat_power(gen_a, k), mat_power(gen_b, e)) for k, e in words]
    labels = ['1' if (k, e) == (0, 0) else (f"A^{k}" if k else '') + ('B' if e else '') for k, e in words]

    def from_generators(ra: Matrix, rb: Matrix) -> List[Matrix]:
        return [mat_mul(mat_power(ra, k), mat_power(rb, e)) for k, e in words]

    beta = one if l % 2 == 0 else Scalar.zeta(m, l)
    irreps = []
    for label, a, b in (('triv', one, one), ('sgnB', one, -one), ('sgnA', -one, beta), ('sgnAB', -one, -beta)):
        irreps.append(Irrep(label, 1, from_generators(((a,),), ((b,),))))
    for j in range(1, l):
        ra = ((Scalar.zeta(m, 2 * j), zero), (zero, Scalar.zeta(m, -2 * j)))
        rb = ((zero, Scalar.rational((-1) ** j)), (one, zero))
        irreps.append(Irrep(f"rho{j}", 2, from_generators(ra, rb)))
    return FiniteSubgroupSL2(f"bindihedral:{l}", elements, labels, m, irreps)


def mckay_matrix(group: FiniteSubgroupSL2) -> List[List[int]]:
    """m_ij = molteplicità di N_i in L ⊗ N_j"""
    chi_l = group.natural_character()
    result = []
    for rep_i in group.irreps:
        row = []
        for rep_j in group.irreps:
            product_char = [chi_l[g] * rep_j.character[g] for g in range(group.order)]
            value = group.character_product(product_char, rep_i.character)
            if not value.is_rational() or value.to_fraction().denominator != 1 or value.to_fraction() < 0:
                raise GroupError(f"Molteplicità non intera tra {rep_i.label} e {rep_j.label}: {value}")
            row.append(int(value.to_fraction()))
        result.append(row)
    return result


def mckay_quiver(group: FiniteSubgroupSL2) -> Tuple[Quiver, List[int], List[List[int]]]:
    """Quiver di McKay orientato dal vertice di indice minore, vettore δ e matrice m_ij"""
    matrix = mckay_matrix(group)
    size = group.num_irreps
    edges = []
    for i in range(size):
        if matrix[i][i] % 2:
            raise GroupError(f"Numero dispari di cappi al vertice {i}")
        edges += [(i, i)] * (matrix[i][i] // 2)
        for j in range(i + 1, size):
            if matrix[i][j] != matrix[j][i]:
                raise GroupError(f"Matrice di McKay non simmetrica in ({i}, {j})")
            edges += [(i, j)] * matrix[i][j]
    quiver = Quiver(size, edges, name=f"mckay({group.name})")
    delta = group.dims
    for j in range(size):
        if 2 * delta[j] != sum(matrix[i][j] * delta[i] for i in range(size)):
            raise GroupError(f"Condizione affine violata al vertice {j}")
    return quiver, delta, matrix


# Algebra del gruppo CΓ

def ga_multiply(group: FiniteSubgroupSL2, x: GroupAlgebraElement, y: GroupAlgebraElement) -> GroupAlgebraElement:
    result: GroupAlgebraElement = {}
    for a, ca in x.items():
        for b, cb in y.items():
            g = group.table[a][b]
            value = result.get(g, Scalar.zero()) + ca * cb
            if value:
                result[g] = value
            else:
                result.pop(g, None)
    return result


def ga_add(x: GroupAlgebraElement, y: GroupAlgebraElement, factor: Scalar = None) -> GroupAlgebraElement:
    factor = Scalar.one() if factor is None else factor
    result = dict(x)
    for g, c in y.items():
        value = result.get(g, Scalar.zero()) + c * factor
        if value:
            result[g] = value
        else:
            result.pop(g, None)
    return result


class MatrixUnits:
    """E^i_{p,q} = (δ_i/|Γ|) Σ_γ ρ_i(γ⁻¹)_{q,p} γ, f_i = E^i_{0,0}, f = Σ f_i"""

    def __init__(self, group: FiniteSubgroupSL2):
        self.group = group
        self.units: Dict[Tuple[int, int, int], GroupAlgebraElement] = {}
        for i, rep in enumerate(group.irreps):
            factor = Scalar.rational(rep.dim) / group.order
            for p in range(rep.dim):
                for q in range(rep.dim):
                    element = {}
                    for g in range(group.order):
                        value = rep.matrices[group.inv(g)][q][p] * factor
                        if value:
                            element[g] = value
                    self.units[(i, p, q)] = element
        self.f = [self.units[(i, 0, 0)] for i in range(group.num_irreps)]
        total: GroupAlgebraElement = {}
        for fi in self.f:
            total = ga_add(total, fi)
        self.f_total = total
        self.verify()

    def unit(self, i: int, p: int, q: int) -> GroupAlgebraElement:
        return self.units[(i, p, q)]

    def verify(self):
        """Legge di moltiplicazione delle unità matriciali e risoluzione dell'identità"""
        group = self.group
        for (i, p, q), left in self.units.items():
            for (j, r, s), right in self.units.items():
                product_ = ga_multiply(group, left, right)
                expected = self.units[(i, p, s)] if (i == j and q == r) else {}
                if product_ != expected:
                    raise GroupError(f"{group.name}: E^{i}_({p},{q}) E^{j}_({r},{s}) errato")
        identity: GroupAlgebraElement = {}
        for i, rep in enumerate(group.irreps):
            for p in range(rep.dim):
                identity = ga_add(identity, self.units[(i, p, p)])
        if identity != {group.identity: Scalar.one()}:
            raise GroupError(f"{group.name}: le unità diagonali non sommano a 1")


def matrix_units(group: FiniteSubgroupSL2) -> MatrixUnits:
    return MatrixUnits(group)


class GammaN:
    """Il gruppo Γ_n = S_n ⋉ Γ^n; (g, σ) indica g·σ e (g, σ)(h, τ) = (g·σ(h), στ)"""

    def __init__(self, group: FiniteSubgroupSL2, n: int):
        if n < 1:
            raise GroupError(f"n deve essere almeno 1, ricevuto {n}")
        self.group = group
        self.n = n
        self.identity: GammaNKey = ((0,) * n, identity_perm(n))

    def elements(self) -> List[GammaNKey]:
        return [(g, s) for s in all_perms(self.n) for g in product(range(self.group.order), repeat=self.n)]

    @property
    def order(self) -> int:
        total = self.group.order ** self.n
        for k in range(2, self.n + 1):
            total *= k
        return total

    def mult(self, a: GammaNKey, b: GammaNKey) -> GammaNKey:
        g, sigma = a
        h, tau = b
        moved = act_on_tuple(sigma, h)
        table = self.group.table
        return tuple(table[g[j]][moved[j]] for j in range(self.n)), compose(sigma, tau)

    def inverse(self, a: GammaNKey) -> GammaNKey:
        g, sigma = a
        sigma_inv = inverse_perm(sigma)
        g_inv = tuple(self.group.inv(x) for x in g)
        return act_on_tuple(sigma_inv, g_inv), sigma_inv

    def site_element(self, site: int, gamma: int) -> GammaNKey:
        g = [0] * self.n
        g[site] = gamma
        return tuple(g), identity_perm(self.n)

    def perm_element(self, sigma: Perm) -> GammaNKey:
        return (0,) * self.n, tuple(sigma)

    def reflection_s(self, i: int, j: int, gamma: int) -> GammaNKey:
        """s_ij γ_i γ_j⁻¹ come prodotto esplicito"""
        s = self.perm_element(transposition(self.n, i, j))
        return self.mult(self.mult(s, self.site_element(i, gamma)), self.site_element(j, self.group.inv(gamma)))

    def matrix(self, a: GammaNKey) -> Matrix:
        """Matrice 2n x 2n su V = L^n; la lettera u al sito i va in (g_σ(i) u) al sito σ(i)"""
        g, sigma = a
        size = 2 * self.n
        zero = Scalar.zero()
        rows = [[zero] * size for _ in range(size)]
        for i in range(self.n):
            target = sigma[i]
            block = self.group.elements[g[target]]
            for c in range(2):
                for r in range(2):
                    rows[2 * target + r][2 * i + c] = block[r][c]
        return tuple(tuple(row) for row in rows)

    def multiply(self, x: GammaNElement, y: GammaNElement) -> GammaNElement:
        return gamma_n_multiply(self, x, y)

    def tensor(self, factors: Sequence[GroupAlgebraElement]) -> GammaNElement:
        """Prodotto tensoriale di elementi di CΓ, uno per sito, con σ = id"""
        result: GammaNElement = {}
        ident = identity_perm(self.n)
        items = [list(f.items()) for f in factors]
        for combo in product(*items):
            coeff = Scalar.one()
            for _, c in combo:
                coeff = coeff * c
            key = (tuple(g for g, _ in combo), ident)
            result[key] = result.get(key, Scalar.zero()) + coeff
        return {k: v for k, v in result.items() if v}


def gamma_n_multiply(gamma_n: GammaN, x: GammaNElement, y: GammaNElement) -> GammaNElement:
    """Prodotto bilineare in C[Γ_n]"""
    result: GammaNElement = {}
    for a, ca in x.items():
        for b, cb in y.items():
            key = gamma_n.mult(a, b)
            value = result.get(key, Scalar.zero()) + ca * cb
            if value:
                result[key] = value
            else:
                result.pop(key, None)
    return result


def verify_idempotent_resolution(units: MatrixUnits, n: int) -> bool:
    """Σ (E^{i1}_{p1,0} ⊗ ...) f^{⊗n} (E^{i1}_{0,p1} ⊗ ...) = 1^{⊗n}"""
    group = units.group
    gamma_n = GammaN(group, n)
    f_n = gamma_n.tensor([units.f_total] * n)
    labels = [(i, p) for i, rep in enumerate(group.irreps) for p in range(rep.dim)]
    total: GammaNElement = {}
    for choice in product(labels, repeat=n):
        left = gamma_n.tensor([units.unit(i, p, 0) for i, p in choice])
        right = gamma_n.tensor([units.unit(i, 0, p) for i, p in choice])
        term = gamma_n_multiply(gamma_n, gamma_n_multiply(gamma_n, left, f_n), right)
        for key, value in term.items():
            new = total.get(key, Scalar.zero()) + value
            if new:
                total[key] = new
            else:
                total.pop(key, None)
    ok = total == {gamma_n.identity: Scalar.one()}
    if not ok:
        raise GroupError(f"{group.name}: risoluzione dell'identità fallita per n={n}")
    return ok


def matrix_coefficient_sum(group: FiniteSubgroupSL2, i: int, j: int, g: int = 0, h: int = 0,
                           u: Optional[Sequence] = None, v: Optional[Sequence] = None) -> Scalar:
    """Σ_γ w(γ) ρ_j(γ)_00 ρ_i(g γ⁻¹ h)_00 con w(γ) = ω_L(γu, v), oppure w = 1

    Nel caso semplice (g = h = 1, senza peso) il valore è |Γ|/δ_i se i = j, altrimenti 0.
    """
    rep_i, rep_j = group.irreps[i], group.irreps[j]
    if (u is None) != (v is None):
        raise GroupError("I vettori u e v vanno forniti insieme")
    if u is not None:
        u = tuple(Scalar.coerce(c) for c in u)
        v = tuple(Scalar.coerce(c) for c in v)
    total = Scalar.zero()
    for gamma in range(group.order):
        weight = Scalar.one()
        if u is not None:
            weight = omega_L(mat_vec(group.elements[gamma], u), v)
            if not weight:
                continue
        inner = group.mult(group.mult(g, group.inv(gamma)), h)
        total = total + weight * rep_j.matrices[gamma][0][0] * rep_i.matrices[inner][0][0]
    return total
