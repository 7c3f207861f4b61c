"""
Abbreviazioni per quiver, gruppi e parametri usate dalla CLI e dai test
"""

import logging
import re
from typing import List, Optional, Sequence

from .groups import FiniteSubgroupSL2, binary_dihedral, cyclic_group
from .quiver import Quiver, QuiverError, affine_quiver, quiver_from_spec
from .scalars import Scalar, WreathPbwError
from .sra import SraParams

logger = logging.getLogger(__name__)

_AFFINE = re.compile(r'^affine([ADE]):(\d+)$', re.IGNORECASE)
_GROUP = re.compile(r'^(cyclic|bindihedral):(\d+)$', re.IGNORECASE)


class FixtureError(WreathPbwError):
    """Abbreviazione o file di fixture non valido"""


def parse_quiver(spec: str) -> Quiver:
    """affineA:k, affineD:k, affineE:k, jordan, JSON in linea o percorso di un file JSON"""
    text = spec.strip()
    if text.lower() == 'jordan':
        return affine_quiver('A', 0)
    match = _AFFINE.match(text)
    try:
        if match:
            return affine_quiver(match.group(1), int(match.group(2)))
        if text.startswith('{') or text.endswith('.json'):
            return quiver_from_spec(text)
    except QuiverError as e:
        raise FixtureError(f"Quiver non valido {spec!r}: {e}") from e
    raise FixtureError(f"Abbreviazione di quiver sconosciuta: {spec!r}")


def parse_group(spec: str) -> FiniteSubgroupSL2:
    """cyclic:l oppure bindihedral:l"""
    match = _GROUP.match(spec.strip())
    if not match:
        raise FixtureError(f"Abbreviazione di gruppo sconosciuta: {spec!r}")
    family, order = match.group(1).lower(), int(match.group(2))
    try:
        return cyclic_group(order) if family == 'cyclic' else binary_dihedral(order)
    except WreathPbwError as e:
        raise FixtureError(f"Gruppo non valido {spec!r}: {e}") from e


def parse_scalars(csv: Optional[str]) -> List[Scalar]:
    """Lista di razionali esatti separati da virgole, ad esempio "1,-3/2,0" """
    if csv is None or not csv.strip():
        return []
    return [Scalar.parse(item) for item in csv.split(',')]


def parse_lambda(csv: Optional[str], num_vertices: int) -> List[Scalar]:
    values = parse_scalars(csv)
    if not values:
        return [Scalar.zero()] * num_vertices
    if len(values) != num_vertices:
        raise FixtureError(f"λ ha {len(values)} componenti, il quiver ha {num_vertices} vertici")
    return values


def params_from_strings(group: FiniteSubgroupSL2, t: str, k: str, cprime: Optional[str]) -> SraParams:
    """c′ per classi di coniugio non banali, nell'ordine di conjugacy_classes(); vuoto vale zero"""
    values: Sequence[Scalar] = parse_scalars(cprime)
    classes = [c for c in group.conjugacy_classes() if group.identity not in c]
    if not values:
        values = [Scalar.zero()] * len(classes)
    if len(values) != len(classes):
        raise FixtureError(f"c′ richiede {len(classes)} valori (uno per classe non banale), ricevuti {len(values)}")
    return SraParams.from_class_values(group, Scalar.parse(t), Scalar.parse(k), values)
