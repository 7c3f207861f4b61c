import pytest

from src.groups import (GammaN, GroupError, MatrixUnits, binary_dihedral, cyclic_group, gamma_n_multiply,
                        mat_mul, matrix_coefficient_sum, matrix_units, mckay_matrix, mckay_quiver, verify_idempotent_resolution)
from src.quiver import affine_quiver, doubled_isomorphic
from src.scalars import Scalar


@pytest.mark.parametrize('l', [1, 2, 3, 4, 5, 6])
def test_mckay_of_cyclic_is_affine_a(l):
    quiver, delta, matrix = mckay_quiver(cyclic_group(l))
    assert doubled_isomorphic(quiver, affine_quiver('A', l - 1))
    assert delta == [1] * l
    for j in range(l):
        assert 2 * delta[j] == sum(matrix[i][j] * delta[i] for i in range(l))


@pytest.mark.parametrize('l', [2, 3])
def test_mckay_of_binary_dihedral_is_affine_d(l):
    group = binary_dihedral(l)
    assert group.order == 4 * l
    quiver, delta, _ = mckay_quiver(group)
    assert doubled_isomorphic(quiver, affine_quiver('D', l + 2))
    assert sorted(delta) == [1, 1, 1, 1] + [2] * (l - 1)
    assert sum(d * d for d in delta) == group.order


def test_cyclic_group_rejects_bad_order():
    with pytest.raises(GroupError):
        cyclic_group(0)
    with pytest.raises(GroupError):
        binary_dihedral(1)


def test_mckay_matrix_z4_cycle():
    matrix = mckay_matrix(cyclic_group(4))
    assert matrix == [[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]]


def test_conjugacy_classes():
    assert len(cyclic_group(3).conjugacy_classes()) == 3
    # Q8: {1}, {-1}, {±A}, {±B}, {±AB}
    assert len(binary_dihedral(2).conjugacy_classes()) == 5


@pytest.mark.parametrize('group', [cyclic_group(2), cyclic_group(3), binary_dihedral(2)], ids=lambda g: g.name)
def test_matrix_units_are_orthogonal_idempotents(group):
    units = matrix_units(group)
    assert isinstance(units, MatrixUnits)
    units.verify()
    is_one = units.f_total == {group.identity: Scalar.one()}
    assert is_one == all(d == 1 for d in group.dims)
    assert len(units.f) == group.num_irreps


@pytest.mark.parametrize('l,n', [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_idempotent_resolution(l, n):
    assert verify_idempotent_resolution(MatrixUnits(cyclic_group(l)), n)


def test_idempotent_resolution_binary_dihedral():
    assert verify_idempotent_resolution(MatrixUnits(binary_dihedral(2)), 1)


def test_matrix_coefficient_orthogonality(z3):
    for i in range(3):
        for j in range(3):
            expected = 3 if i == j else 0
            assert matrix_coefficient_sum(z3, i, j) == expected


def test_matrix_coefficient_two_dim_irrep():
    group = binary_dihedral(2)
    two_dim = group.dims.index(2)
    assert matrix_coefficient_sum(group, two_dim, two_dim) == Scalar.rational(group.order) / 2


def test_gamma_n_product_and_inverse(z3):
    gamma_n = GammaN(z3, 2)
    assert gamma_n.order == 18
    elements = gamma_n.elements()
    assert len(elements) == gamma_n.order
    for a in elements[::3]:
        assert gamma_n.mult(a, gamma_n.inverse(a)) == gamma_n.identity
        assert gamma_n.matrix(gamma_n.mult(a, a)) == mat_mul(gamma_n.matrix(a), gamma_n.matrix(a))


def test_gamma_n_permutation_moves_sites(z3):
    gamma_n = GammaN(z3, 2)
    s = gamma_n.perm_element((1, 0))
    g0 = gamma_n.site_element(0, 1)
    # s g_0 s⁻¹ = g_1
    conjugated = gamma_n.mult(gamma_n.mult(s, g0), gamma_n.inverse(s))
    assert conjugated == gamma_n.site_element(1, 1)


def test_gamma_n_multiply_is_bilinear(z2):
    gamma_n = GammaN(z2, 2)
    units = MatrixUnits(z2)
    f0 = gamma_n.tensor([units.f[0], units.f[0]])
    f1 = gamma_n.tensor([units.f[1], units.f[0]])
    assert gamma_n_multiply(gamma_n, f0, f0) == f0
    assert gamma_n_multiply(gamma_n, f0, f1) == {}


def test_reflection_s_is_involution(z3):
    gamma_n = GammaN(z3, 2)
    s = gamma_n.reflection_s(0, 1, 1)
    assert gamma_n.mult(s, s) == gamma_n.identity
