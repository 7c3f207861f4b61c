"""
Quiver, raddoppiamento con involuzione stella, quiver affini ADE,
elementi della mappa momento r_i e quiver prodotto
"""

import json
import logging
from itertools import permutations, product
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .scalars import ExactMatrix, Scalar, WreathPbwError, kernel_basis

logger = logging.getLogger(__name__)

Path2 = Tuple[int, ...]


class QuiverError(WreathPbwError):
    """Quiver non valido o parametri di costruzione errati"""


class Quiver:
    """Quiver con vertici densi 0..k-1; lo spigolo k è la coppia (coda, testa)"""

    def __init__(self, num_vertices: int, edges: Sequence[Tuple[int, int]], name: str = ''):
        if num_vertices < 1:
            raise QuiverError(f"Numero di vertici non valido: {num_vertices}")
        checked = []
        for k, edge in enumerate(edges):
            if len(edge) != 2:
                raise QuiverError(f"Spigolo {k} malformato: {edge}")
            tail, head = int(edge[0]), int(edge[1])
            if not (0 <= tail < num_vertices and 0 <= head < num_vertices):
                raise QuiverError(f"Lo spigolo {k} ({tail}->{head}) riferisce un vertice inesistente")
            checked.append((tail, head))
        self.num_vertices = num_vertices
        self.edges: Tuple[Tuple[int, int], ...] = tuple(checked)
        self.name = name

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    def tail(self, edge: int) -> int:
        return self.edges[edge][0]

    def head(self, edge: int) -> int:
        return self.edges[edge][1]

    def has_loops(self) -> bool:
        return any(t == h for t, h in self.edges)

    def is_connected(self) -> bool:
        seen = {0}
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for t, h in self.edges:
                for a, b in ((t, h), (h, t)):
                    if a == v and b not in seen:
                        seen.add(b)
                        frontier.append(b)
        return len(seen) == self.num_vertices

    def to_spec(self) -> Dict:
        return {'vertices': self.num_vertices, 'edges': [list(e) for e in self.edges]}

    def __eq__(self, other) -> bool:
        return isinstance(other, Quiver) and self.num_vertices == other.num_vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.num_vertices, self.edges))

    def __repr__(self) -> str:
        label = self.name or 'Quiver'
        return f"{label}({self.num_vertices} vertici, {len(self.edges)} spigoli)"


def quiver_from_spec(spec, name: str = '') -> Quiver:
    """Costruisce un quiver da {"vertices": k, "edges": [[coda, testa], ...]}

    Accetta un dizionario, un testo JSON oppure il percorso di un file JSON.
    """
    if isinstance(spec, Path) or (isinstance(spec, str) and not spec.lstrip().startswith('{')):
        path = Path(spec)
        if not path.exists():
            raise QuiverError(f"File quiver non trovato: {path}")
        spec = path.read_text(encoding='utf-8')
        name = name or path.stem
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as e:
            raise QuiverError(f"Specifica quiver non è JSON valido: {e}") from e
    if not isinstance(spec, dict) or 'vertices' not in spec or 'edges' not in spec:
        raise QuiverError("La specifica quiver richiede le chiavi 'vertices' e 'edges'")
    vertices = spec['vertices']
    if isinstance(vertices, list):
        vertices = len(vertices)
    return Quiver(int(vertices), [tuple(e) for e in spec['edges']], name=name)


def affine_quiver(family: str, index: int) -> Quiver:
    """Rappresentante a orientazione fissa del quiver affine di tipo ADE

    A_0 è il quiver di Jordan, A_1 ha due spigoli paralleli 0->1, A_l (l>=2) è un
    ciclo orientato; per D ed E gli spigoli puntano verso il vertice di diramazione.
    """
    family = family.upper()
    if family == 'A':
        if index < 0:
            raise QuiverError(f"Indice non valido per A: {index}")
        if index == 0:
            edges = [(0, 0)]
        elif index == 1:
            edges = [(0, 1), (0, 1)]
        else:
            edges = [(i, (i + 1) % (index + 1)) for i in range(index + 1)]
    elif family == 'D':
        if index < 4:
            raise QuiverError(f"Indice non valido per D: {index} (minimo 4)")
        edges = [(0, 2), (1, 2)]
        edges += [(j, j + 1) for j in range(2, index - 2)]
        edges += [(index - 1, index - 2), (index, index - 2)]
    elif family == 'E':
        arms = {6: (2, 2, 2), 7: (1, 3, 3), 8: (1, 2, 5)}
        if index not in arms:
            raise QuiverError(f"Indice non valido per E: {index} (ammessi 6, 7, 8)")
        edges = []
        vertex = 1
        for length in arms[index]:
            previous = 0
            for _ in range(length):
                edges.append((vertex, previous))
                previous = vertex
                vertex += 1
    else:
        raise QuiverError(f"Famiglia sconosciuta: {family}")
    return Quiver(index + 1, edges, name=f"affine{family}{index}")


def reorient(quiver: Quiver, flip_set) -> Quiver:
    """Inverte gli spigoli indicati mantenendone gli identificativi"""
    flips = set(flip_set)
    unknown = [k for k in flips if not (0 <= k < len(quiver.edges))]
    if unknown:
        raise QuiverError(f"Spigoli da invertire inesistenti: {sorted(unknown)}")
    edges = [(h, t) if k in flips else (t, h) for k, (t, h) in enumerate(quiver.edges)]
    return Quiver(quiver.num_vertices, edges, name=quiver.name)


class DoubledQuiver:
    """Doppio di un quiver: la lettera 2k è lo spigolo k, la lettera 2k+1 è il suo opposto

    La stella scambia 2k e 2k+1; una lettera è originale se è pari.
    """

    def __init__(self, base: Quiver):
        self.base = base
        self.num_vertices = base.num_vertices
        self.num_letters = 2 * len(base.edges)
        self._tails = []
        self._heads = []
        for t, h in base.edges:
            self._tails += [t, h]
            self._heads += [h, t]
        self._out: Dict[int, List[int]] = {v: [] for v in base.vertices}
        self._in: Dict[int, List[int]] = {v: [] for v in base.vertices}
        for x in range(self.num_letters):
            self._out[self._tails[x]].append(x)
            self._in[self._heads[x]].append(x)

    @property
    def vertices(self) -> range:
        return self.base.vertices

    @property
    def letters(self) -> range:
        return range(self.num_letters)

    def tail(self, letter: int) -> int:
        return self._tails[letter]

    def head(self, letter: int) -> int:
        return self._heads[letter]

    @staticmethod
    def star(letter: int) -> int:
        return letter ^ 1

    @staticmethod
    def is_original(letter: int) -> bool:
        return letter % 2 == 0

    @staticmethod
    def edge_of(letter: int) -> int:
        return letter // 2

    def letter_name(self, letter: int) -> str:
        return f"a{letter // 2}" + ('' if letter % 2 == 0 else '*')

    def letters_from(self, vertex: int) -> List[int]:
        return self._out[vertex]

    def letters_into(self, vertex: int) -> List[int]:
        return self._in[vertex]

    def paths(self, length: int, tail: Optional[int] = None) -> Iterator[Path2]:
        """Cammini (x1, ..., xk) in ordine di prodotto: xk si applica per primo"""
        starts = [tail] if tail is not None else list(self.vertices)
        for start in starts:
            yield from self._paths_from(start, length)

    def _paths_from(self, vertex: int, length: int) -> Iterator[Path2]:
        if length == 0:
            yield ()
            return
        for x in self._out[vertex]:
            for rest in self._paths_from(self._heads[x], length - 1):
                yield rest + (x,)

    def adjacency_matrix(self) -> List[List[int]]:
        """C[i][j] = numero di lettere da j a i"""
        matrix = [[0] * self.num_vertices for _ in self.vertices]
        for x in self.letters:
            matrix[self._heads[x]][self._tails[x]] += 1
        return matrix

    def __repr__(self) -> str:
        return f"DoubledQuiver({self.base!r})"


def double(quiver: Quiver) -> DoubledQuiver:
    return DoubledQuiver(quiver)


def moment_elements(qbar: DoubledQuiver) -> Dict[int, Dict[Path2, Scalar]]:
    """r_i = somma su h(a)=i di a a* meno somma su t(a)=i di a* a, per a in Q"""
    one = Scalar.one()
    result: Dict[int, Dict[Path2, Scalar]] = {v: {} for v in qbar.vertices}
    for x in qbar.letters:
        if not qbar.is_original(x):
            continue
        xs = qbar.star(x)
        h, t = qbar.head(x), qbar.tail(x)
        result[h][(x, xs)] = result[h].get((x, xs), Scalar.zero()) + one
        result[t][(xs, x)] = result[t].get((xs, x), Scalar.zero()) - one
    return {v: {p: c for p, c in terms.items() if c} for v, terms in result.items()}


def moment_element_total(qbar: DoubledQuiver) -> Dict[Path2, Scalar]:
    total: Dict[Path2, Scalar] = {}
    for terms in moment_elements(qbar).values():
        for p, c in terms.items():
            total[p] = total.get(p, Scalar.zero()) + c
    return {p: c for p, c in total.items() if c}


class ProductQuiver:
    """Quiver prodotto Q̄ x ... x Q̄; uno spigolo è (slot, lettera, vertice di coda)"""

    def __init__(self, qbar: DoubledQuiver, n: int):
        if n < 1:
            raise QuiverError(f"n deve essere almeno 1, ricevuto {n}")
        self.qbar = qbar
        self.n = n

    @property
    def vertices(self) -> List[Tuple[int, ...]]:
        return list(product(self.qbar.vertices, repeat=self.n))

    def edges_from(self, vertex: Tuple[int, ...]) -> Iterator[Tuple[int, int, Tuple[int, ...]]]:
        for slot in range(self.n):
            for x in self.qbar.letters_from(vertex[slot]):
                yield slot, x, vertex

    @property
    def edges(self) -> List[Tuple[int, int, Tuple[int, ...]]]:
        return [e for v in self.vertices for e in self.edges_from(v)]

    def head(self, edge: Tuple[int, int, Tuple[int, ...]]) -> Tuple[int, ...]:
        slot, x, tail = edge
        h = list(tail)
        h[slot] = self.qbar.head(x)
        return tuple(h)

    @staticmethod
    def tail(edge: Tuple[int, int, Tuple[int, ...]]) -> Tuple[int, ...]:
        return edge[2]

    def expected_edge_count(self) -> int:
        return self.n * self.qbar.num_vertices ** (self.n - 1) * self.qbar.num_letters


def product_quiver(qbar: DoubledQuiver, n: int) -> ProductQuiver:
    return ProductQuiver(qbar, n)


def preprojective_hilbert_dims(quiver: Quiver, degree: int) -> List[List[List[int]]]:
    """Matrici h_k dei pezzi graduati di Π₀ tramite h_k = C h_{k-1} - h_{k-2}

    Valida per quiver connessi non Dynkin (in particolare per i quiver affini).
    """
    adjacency = double(quiver).adjacency_matrix()
    size = quiver.num_vertices
    identity = [[int(i == j) for j in range(size)] for i in range(size)]

    def mult(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(size)) for j in range(size)] for i in range(size)]

    dims = [identity]
    if degree >= 1:
        dims.append(adjacency)
    for _ in range(2, degree + 1):
        step = mult(adjacency, dims[-1])
        dims.append([[step[i][j] - dims[-2][i][j] for j in range(size)] for i in range(size)])
    return dims[:degree + 1]


def null_root(quiver: Quiver) -> List[int]:
    """Radice immaginaria minima: nucleo di 2I - C normalizzato con entrata minima 1"""
    adjacency = double(quiver).adjacency_matrix()
    size = quiver.num_vertices
    cartan = ExactMatrix.from_rows(
        [[(2 if i == j else 0) - adjacency[i][j] for j in range(size)] for i in range(size)]
    )
    basis = kernel_basis(cartan)
    if len(basis) != 1:
        raise QuiverError(f"Il quiver non è affine: nucleo della matrice di Cartan di dimensione {len(basis)}")
    vector = basis[0]
    smallest = min((abs(v.to_fraction()) for v in vector if v), default=None)
    sign = 1 if vector[0].to_fraction() > 0 else -1
    scaled = [v.to_fraction() * sign / smallest for v in vector]
    return [int(v) for v in scaled]


def doubled_isomorphic(first: Quiver, second: Quiver) -> bool:
    """I doppi sono isomorfi come quiver con involuzione

    Un isomorfismo compatibile con la stella equivale a una biiezione dei vertici
    che conserva le molteplicità dei lati non orientati.
    """
    if first.num_vertices != second.num_vertices or len(first.edges) != len(second.edges):
        return False
    c1 = double(first).adjacency_matrix()
    c2 = double(second).adjacency_matrix()
    size = first.num_vertices
    degrees1 = sorted(sum(row) for row in c1)
    degrees2 = sorted(sum(row) for row in c2)
    if degrees1 != degrees2:
        return False
    loops1 = sorted(c1[i][i] for i in range(size))
    if loops1 != sorted(c2[i][i] for i in range(size)):
        return False
    if c1 == c2:
        return True
    for perm in permutations(range(size)):
        if all(c1[i][j] == c2[perm[i]][perm[j]] for i in range(size) for j in range(size)):
            return True
    return False
