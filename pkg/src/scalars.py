"""
Aritmetica esatta su Q e sui campi ciclotomici Q(zeta_m)

Gli elementi sono vettori di razionali nella base delle potenze 1, z, ..., z^(phi(m)-1)
ridotti modulo il polinomio ciclotomico Phi_m. Il modulo contiene anche l'algebra
lineare esatta (rango, nucleo, soluzione, intersezione di sottospazi) usata da tutti
gli altri moduli.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ, Poly, Rational, Symbol, cyclotomic_poly, invert

logger = logging.getLogger(__name__)

_X = Symbol('x')

SparseVector = Dict[Hashable, 'Scalar']


class WreathPbwError(Exception):
    """Errore base del progetto"""


class ScalarZeroDivisionError(WreathPbwError, ZeroDivisionError):
    """Divisione per zero in un campo ciclotomico"""


@lru_cache(maxsize=None)
def cyclotomic_coefficients(m: int) -> Tuple[int, ...]:
    """Coefficienti interi di Phi_m, dal termine noto al termine direttore (monico)"""
    if m < 1:
        raise ValueError(f"Conduttore non valido: {m}")
    poly = Poly(cyclotomic_poly(m, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def field_degree(m: int) -> int:
    return len(cyclotomic_coefficients(m)) - 1


def _reduce(coeffs: Sequence[Fraction], m: int) -> Tuple[Fraction, ...]:
    phi = cyclotomic_coefficients(m)
    d = len(phi) - 1
    work = list(coeffs)
    for k in range(len(work) - 1, d - 1, -1):
        c = work[k]
        if c:
            shift = k - d
            for j in range(d):
                if phi[j]:
                    work[shift + j] -= c * phi[j]
    if len(work) < d:
        work.extend([Fraction(0)] * (d - len(work)))
    return tuple(work[:d])


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Scalar:
    """Elemento esatto di Q(zeta_m); immutabile"""

    __slots__ = ('conductor', 'coeffs')

    def __init__(self, coeffs: Iterable = (0,), conductor: int = 1):
        values = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        if conductor == 1:
            # Q: un solo coefficiente
            total = Fraction(0)
            for c in values:
                total += c
            self.conductor = 1
            self.coeffs = (total,)
            return
        self.conductor = conductor
        if len(values) == field_degree(conductor):
            self.coeffs = tuple(values)
        else:
            self.coeffs = _reduce(values, conductor)

    # Costruttori

    @classmethod
    def rational(cls, value) -> 'Scalar':
        return cls((Fraction(value),), 1)

    @classmethod
    def zero(cls) -> 'Scalar':
        return _ZERO

    @classmethod
    def one(cls) -> 'Scalar':
        return _ONE

    @classmethod
    def zeta(cls, m: int, power: int = 1) -> 'Scalar':
        """zeta_m elevato a power"""
        if m < 1:
            raise ValueError(f"Conduttore non valido: {m}")
        power %= m
        if m == 1:
            return _ONE
        if m == 2:
            return cls.rational(-1 if power else 1)
        coeffs = [Fraction(0)] * (power + 1)
        coeffs[power] = Fraction(1)
        return cls(_reduce(coeffs, m), m)

    @classmethod
    def parse(cls, text: str) -> 'Scalar':
        """Legge un razionale esatto, ad esempio "3/2" o "-1" """
        try:
            return cls.rational(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Parametro razionale non valido: {text!r}") from e

    @staticmethod
    def coerce(value) -> 'Scalar':
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar.rational(value)
        if isinstance(value, str):
            return Scalar.parse(value)
        raise TypeError(f"Impossibile convertire {type(value).__name__} in Scalar")

    # Predicati

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} non è razionale")
        return self.coeffs[0]

    def bit_size(self) -> int:
        return sum(c.numerator.bit_length() + c.denominator.bit_length() for c in self.coeffs)

    # Cambio di conduttore

    def lift(self, target: int) -> 'Scalar':
        """Immersione Q(zeta_m) -> Q(zeta_M) con zeta_m = zeta_M^(M/m)"""
        m = self.conductor
        if target == m:
            return self
        if target % m:
            raise ValueError(f"Il conduttore {target} non è multiplo di {m}")
        if self.is_rational():
            if target == 1:
                return self
            coeffs = [self.coeffs[0]] + [Fraction(0)] * (field_degree(target) - 1)
            return Scalar(coeffs, target)
        step = target // m
        coeffs = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for k, c in enumerate(self.coeffs):
            coeffs[k * step] = c
        return Scalar(_reduce(coeffs, target), target)

    def _aligned(self, other: 'Scalar') -> Tuple['Scalar', 'Scalar']:
        if self.conductor == other.conductor:
            return self, other
        target = _lcm(self.conductor, other.conductor)
        return self.lift(target), other.lift(target)

    # Aritmetica

    def __neg__(self) -> 'Scalar':
        return Scalar(tuple(-c for c in self.coeffs), self.conductor)

    def __add__(self, other) -> 'Scalar':
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = Scalar.rational(other)
        if self.conductor == 1 and other.conductor == 1:
            return Scalar((self.coeffs[0] + other.coeffs[0],), 1)
        if other.conductor == 1 and other.is_rational():
            return Scalar((self.coeffs[0] + other.coeffs[0],) + self.coeffs[1:], self.conductor)
        if self.conductor == 1:
            return other + self
        a, b = self._aligned(other)
        return Scalar(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), a.conductor)

    __radd__ = __add__

    def __sub__(self, other) -> 'Scalar':
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other) -> 'Scalar':
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return Scalar.rational(other) + (-self)

    def __mul__(self, other) -> 'Scalar':
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = Scalar.rational(other)
        if other.conductor == 1:
            q = other.coeffs[0]
            return Scalar(tuple(c * q for c in self.coeffs), self.conductor)
        if self.conductor == 1:
            q = self.coeffs[0]
            return Scalar(tuple(c * q for c in other.coeffs), other.conductor)
        a, b = self._aligned(other)
        product = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        product[i + j] += x * y
        return Scalar(_reduce(product, a.conductor), a.conductor)

    __rmul__ = __mul__

    def inverse(self) -> 'Scalar':
        """Inverso tramite l'algoritmo di Euclide esteso modulo Phi_m"""
        if self.is_zero():
            raise ScalarZeroDivisionError("Divisione per zero")
        if self.is_rational():
            return Scalar((1 / self.coeffs[0],) + self.coeffs[1:], self.conductor)
        m = self.conductor
        f = Poly([Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)], _X, domain=QQ)
        g = Poly(list(reversed(cyclotomic_coefficients(m))), _X, domain=QQ)
        inv = invert(f, g)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(inv.all_coeffs())]
        return Scalar(_reduce(coeffs, m), m)

    def __truediv__(self, other) -> 'Scalar':
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = Scalar.coerce(other)
        if other.is_zero():
            raise ScalarZeroDivisionError(f"Divisione per zero: {self} / 0")
        if other.is_rational():
            q = other.coeffs[0]
            return Scalar(tuple(c / q for c in self.coeffs), self.conductor)
        return self * other.inverse()

    def __rtruediv__(self, other) -> 'Scalar':
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return Scalar.rational(other) / self

    def __pow__(self, exponent: int) -> 'Scalar':
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        exponent = abs(exponent)
        result = Scalar.rational(1)
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> 'Scalar':
        """Coniugio complesso zeta -> zeta^-1"""
        m = self.conductor
        if m <= 2 or self.is_rational():
            return self
        coeffs = [Fraction(0)] * m
        for k, c in enumerate(self.coeffs):
            coeffs[(-k) % m] += c
        return Scalar(_reduce(coeffs, m), m)

    # Confronto e rappresentazione

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return self.is_rational() and self.coeffs[0] == other
        if self.conductor == other.conductor:
            return self.coeffs == other.coeffs
        a, b = self._aligned(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        # forma canonica: elementi uguali in conduttori diversi hanno lo stesso hash
        return hash(_minimal_form(self.conductor, self.coeffs))

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*z{self.conductor}")
            else:
                terms.append(f"{c}*z{self.conductor}^{k}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"

    def to_json(self) -> str:
        return str(self)


_ZERO = Scalar((0,), 1)
_ONE = Scalar((1,), 1)


def _solve_fractions(columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """Soluzione unica di Σ x_k columns[k] = target per colonne indipendenti, None se incompatibile"""
    rows = [[col[i] for col in columns] + [target[i]] for i in range(len(target))]
    width = len(columns)
    pivot_row = 0
    pivots = []
    for col in range(width):
        pivot = next((r for r in range(pivot_row, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        lead = rows[pivot_row][col]
        rows[pivot_row] = [v / lead for v in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [v - factor * p for v, p in zip(rows[r], rows[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    if any(row[width] for row in rows[pivot_row:]):
        return None
    solution = [Fraction(0)] * width
    for r, col in enumerate(pivots):
        solution[col] = rows[r][width]
    return solution


@lru_cache(maxsize=4096)
def _minimal_form(conductor: int, coeffs: Tuple[Fraction, ...]) -> Tuple[int, Tuple[Fraction, ...]]:
    """Conduttore minimo d | m con l'elemento in Q(zeta_d), e le sue coordinate lì"""
    for d in range(3, conductor):
        if conductor % d:
            continue
        columns = [Scalar.zeta(d, k).lift(conductor).coeffs for k in range(field_degree(d))]
        solution = _solve_fractions(columns, coeffs)
        if solution is not None:
            return d, tuple(solution)
    return conductor, coeffs


def field_ops(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Operazione di campo esatta nel conduttore comune"""
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    if op == 'div':
        return a / b
    raise ValueError(f"Operazione sconosciuta: {op}")


# Algebra lineare sparsa

def vec_add(target: SparseVector, source: SparseVector, factor: Scalar = _ONE) -> None:
    """target += factor * source, rimuovendo gli zeri"""
    if not factor:
        return
    for key, value in source.items():
        new = target.get(key, _ZERO) + value * factor
        if new:
            target[key] = new
        else:
            target.pop(key, None)


def vec_scale(source: SparseVector, factor: Scalar) -> SparseVector:
    if not factor:
        return {}
    return {key: value * factor for key, value in source.items()}


def vec_is_zero(vector: SparseVector) -> bool:
    return not any(vector.values())


class RowEchelon:
    """Forma a scala ridotta incrementale di un insieme di vettori sparsi

    Le righe pivot hanno pivot 1 e zeri nelle altre colonne pivot. La colonna pivot di
    una nuova riga è scelta con il coefficiente di dimensione in bit minima, a parità
    con l'ordine di prima apparizione delle colonne.
    """

    def __init__(self, column_order: Optional[Sequence[Hashable]] = None):
        self.pivot_rows: Dict[Hashable, SparseVector] = {}
        self._order: Dict[Hashable, int] = {}
        if column_order is not None:
            for col in column_order:
                self._order.setdefault(col, len(self._order))

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def _rank_of(self, col: Hashable) -> int:
        if col not in self._order:
            self._order[col] = len(self._order)
        return self._order[col]

    def reduce(self, vector: SparseVector) -> SparseVector:
        """Riduce un vettore rispetto alle righe pivot correnti"""
        row = {k: v for k, v in vector.items() if v}
        for col in [c for c in row if c in self.pivot_rows]:
            factor = row.get(col)
            if factor:
                vec_add(row, self.pivot_rows[col], -factor)
        return row

    def add(self, vector: SparseVector) -> bool:
        """Aggiunge un vettore; restituisce True se aumenta il rango"""
        row = self.reduce(vector)
        if not row:
            return False
        for col in row:
            self._rank_of(col)
        pivot = min(row, key=lambda c: (row[c].bit_size(), self._order[c]))
        inv = row[pivot].inverse()
        row = vec_scale(row, inv)
        row[pivot] = _ONE
        for other in self.pivot_rows.values():
            factor = other.get(pivot)
            if factor:
                vec_add(other, row, -factor)
        self.pivot_rows[pivot] = row
        return True

    def contains(self, vector: SparseVector) -> bool:
        return not self.reduce(vector)


def rank_of(vectors: Iterable[SparseVector]) -> int:
    echelon = RowEchelon()
    for v in vectors:
        echelon.add(v)
    return echelon.rank


def sparse_kernel(rows: Iterable[SparseVector], columns: Sequence[Hashable]) -> List[SparseVector]:
    """Base del nucleo destro della matrice con righe sparse sulle colonne date"""
    echelon = RowEchelon(columns)
    for row in rows:
        echelon.add(row)
    basis = []
    pivots = echelon.pivot_rows
    for free in columns:
        if free in pivots:
            continue
        vector = {free: _ONE}
        for col, prow in pivots.items():
            value = prow.get(free)
            if value:
                vector[col] = -value
        basis.append(vector)
    return basis


def span_basis(vectors: Iterable[SparseVector]) -> List[SparseVector]:
    """Sottoinsieme massimale linearmente indipendente (nell'ordine dato)"""
    echelon = RowEchelon()
    chosen = []
    for v in vectors:
        if echelon.add(v):
            chosen.append(v)
    return chosen


def same_span(first: Sequence[SparseVector], second: Sequence[SparseVector]) -> bool:
    r1 = rank_of(first)
    r2 = rank_of(second)
    return r1 == r2 == rank_of(list(first) + list(second))


def intersection_with_coefficients(
    left: Sequence[SparseVector], right: Sequence[SparseVector]
) -> List[Tuple[SparseVector, Dict[int, Scalar], Dict[int, Scalar]]]:
    """Intersezione span(left) ∩ span(right) tramite il nucleo di [left | -right]

    Ogni elemento restituito è (vettore, coefficienti su left, coefficienti su right).
    Se left e right sono indipendenti gli elementi formano una base dell'intersezione.
    """
    rows: Dict[Hashable, SparseVector] = {}
    for i, v in enumerate(left):
        for key, value in v.items():
            rows.setdefault(key, {})[('l', i)] = value
    for j, v in enumerate(right):
        for key, value in v.items():
            rows.setdefault(key, {})[('r', j)] = -value
    columns = [('l', i) for i in range(len(left))] + [('r', j) for j in range(len(right))]
    result = []
    for kernel_vector in sparse_kernel(rows.values(), columns):
        c_left = {i: val for (side, i), val in kernel_vector.items() if side == 'l'}
        c_right = {j: val for (side, j), val in kernel_vector.items() if side == 'r'}
        vector: SparseVector = {}
        for i, val in c_left.items():
            vec_add(vector, left[i], val)
        if vector:
            result.append((vector, c_left, c_right))
    return result


def subspace_intersection(left: Sequence[SparseVector], right: Sequence[SparseVector]) -> List[SparseVector]:
    """Base di span(left) ∩ span(right)"""
    return span_basis(v for v, _, _ in intersection_with_coefficients(left, right))


class ExactMatrix:
    """Matrice esatta sparsa di Scalar"""

    def __init__(self, rows: int, cols: int, entries: Optional[Dict[Tuple[int, int], Scalar]] = None):
        if rows < 0 or cols < 0:
            raise ValueError("Dimensioni negative")
        self.rows = rows
        self.cols = cols
        self.entries: Dict[Tuple[int, int], Scalar] = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"Indice fuori intervallo: {(i, j)}")
            value = Scalar.coerce(value)
            if value:
                self.entries[(i, j)] = value

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> 'ExactMatrix':
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("Righe di lunghezza diversa")
            for j, value in enumerate(row):
                entries[(i, j)] = value
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n: int) -> 'ExactMatrix':
        return cls(n, n, {(i, i): _ONE for i in range(n)})

    def __getitem__(self, index: Tuple[int, int]) -> Scalar:
        return self.entries.get(index, _ZERO)

    def sparse_rows(self) -> List[SparseVector]:
        rows: List[SparseVector] = [{} for _ in range(self.rows)]
        for (i, j), value in self.entries.items():
            rows[i][j] = value
        return rows

    def rank(self) -> int:
        return rank_of(self.sparse_rows())

    def apply(self, vector: Sequence) -> List[Scalar]:
        result = [_ZERO] * self.rows
        for (i, j), value in self.entries.items():
            result[i] = result[i] + value * Scalar.coerce(vector[j])
        return result

    def solve(self, rhs: Sequence) -> Optional[List[Scalar]]:
        """Una soluzione di M x = rhs, oppure None se il sistema è incompatibile"""
        rows = self.sparse_rows()
        augmented = []
        for i, row in enumerate(rows):
            value = Scalar.coerce(rhs[i])
            full = dict(row)
            if value:
                full['rhs'] = -value
            augmented.append(full)
        columns = list(range(self.cols)) + ['rhs']
        # soluzione particolare: vettore del nucleo con componente rhs non nulla
        for vector in sparse_kernel(augmented, columns):
            scale = vector.get('rhs')
            if scale:
                return [vector.get(j, _ZERO) / scale for j in range(self.cols)]
        return None


def kernel_basis(matrix: ExactMatrix) -> List[List[Scalar]]:
    """Base esatta del nucleo destro; lista vuota se la matrice è iniettiva"""
    columns = list(range(matrix.cols))
    return [[v.get(j, _ZERO) for j in columns] for v in sparse_kernel(matrix.sparse_rows(), columns)]
