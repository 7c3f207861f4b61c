import json

import pytest

from src.fixtures import FixtureError, params_from_strings, parse_group, parse_lambda, parse_quiver, parse_scalars
from src.groups import binary_dihedral
from src.quiver import affine_quiver
from src.scalars import Scalar


@pytest.mark.parametrize('spec,vertices', [('affineA:2', 3), ('AFFINED:4', 5), ('affineE:6', 7), ('jordan', 1)])
def test_parse_quiver_abbreviations(spec, vertices):
    assert parse_quiver(spec).num_vertices == vertices


def test_parse_quiver_json(tmp_path):
    inline = '{"vertices": 2, "edges": [[0, 1], [1, 0]]}'
    assert parse_quiver(inline).num_vertices == 2
    path = tmp_path / 'cycle.json'
    path.write_text(json.dumps({'vertices': 3, 'edges': [[0, 1], [1, 2], [2, 0]]}), encoding='utf-8')
    assert parse_quiver(str(path)) == affine_quiver('A', 2)


@pytest.mark.parametrize('spec', ['affineF:4', 'affineD:3', 'kronecker', '{"vertices": 1}'])
def test_parse_quiver_errors(spec):
    with pytest.raises(FixtureError):
        parse_quiver(spec)


def test_parse_group():
    assert parse_group('cyclic:5').order == 5
    assert parse_group(' BinDihedral:3 ').order == 12
    for bad in ('cyclic:0', 'dihedral:3', 'cyclic'):
        with pytest.raises(FixtureError):
            parse_group(bad)


def test_parse_scalars_and_lambda():
    assert parse_scalars("1,-3/2, 0") == [1, Scalar.parse("-3/2"), 0]
    assert parse_scalars(None) == []
    assert parse_lambda(None, 3) == [0, 0, 0]
    assert parse_lambda("1,2", 2) == [1, 2]
    with pytest.raises(FixtureError):
        parse_lambda("1,2,3", 2)


def test_params_from_strings(z3):
    params = params_from_strings(z3, "1/2", "2", "1,-1")
    assert params.t == Scalar.parse("1/2")
    assert params.k == 2
    assert sorted(str(v) for v in params.cprime.values()) == ['-1', '1']
    assert not any(params_from_strings(z3, "1", "0", None).cprime.values())
    with pytest.raises(FixtureError):
        params_from_strings(z3, "1", "0", "1")


def test_params_from_strings_binary_dihedral():
    group = binary_dihedral(2)
    nontrivial = len(group.conjugacy_classes()) - 1
    params = params_from_strings(group, "1", "1", ",".join(["1"] * nontrivial))
    assert all(params.c_gamma(g) == 1 for g in range(group.order) if g != group.identity)
