import asyncio
import random
from concurrent.futures import ThreadPoolExecutor

import pytest

from src.groups import MatrixUnits, cyclic_group, mckay_matrix
from src.morita import (EmbeddingMap, MoritaError, cherednik_dictionary_check, corner_identify, f_power, hom_basis,
                        parameter_map, solve_theta_phi, verify_morita, verify_morita_async)
from src.quiver import affine_quiver
from src.scalars import Scalar
from src.sra import SraAlgebra, SraElement, SraParams, random_params


@pytest.mark.parametrize('l', [1, 2, 3, 4])
def test_hom_basis_dimensions_follow_mckay(l):
    group = cyclic_group(l)
    matrix = mckay_matrix(group)
    for source in range(l):
        for target in range(l):
            basis = hom_basis(group, source, target)
            assert len(basis) == matrix[source][target]
            for vector in basis:
                first = next(c for row in vector for c in row if c)
                assert first == 1


@pytest.mark.parametrize('l', [1, 2, 3, 4])
def test_theta_phi_verifies(l):
    thetaphi = solve_theta_phi(cyclic_group(l))
    assert thetaphi.verify() == {'equivariance': [], 'pairing': [], 'mesh': []}


def test_theta_phi_z2_values(z2):
    data = solve_theta_phi(z2).to_dict()
    assert data['theta'] == [[['1'], ['0']], [['0'], ['1']]]
    assert data['phi'] == [[['0'], ['-1']], [['1'], ['0']]]


def test_theta_phi_jordan_values():
    data = solve_theta_phi(cyclic_group(1)).to_dict()
    assert data['theta'] == [[['1'], ['0']]]
    assert data['phi'] == [[['0'], ['-1']]]


def test_theta_phi_rejects_foreign_quiver(z3):
    with pytest.raises(MoritaError):
        solve_theta_phi(z3, affine_quiver('A', 1))


def test_parameter_map_trivial_cprime(z2, z3):
    lam, nu = parameter_map(z2, SraParams(z2, 1, 0))
    assert lam == [1, 1]
    assert nu == 0
    _, nu = parameter_map(z3, SraParams(z3, 0, 1))
    assert nu == Scalar.parse("3/2")


def test_parameter_map_with_cprime(z2):
    lam, _ = parameter_map(z2, SraParams.from_class_values(z2, 1, 0, [2]))
    # λ = t δ + c′ χ(-1): il carattere segno vale -1
    assert lam[0] + lam[1] == 2
    assert 3 in lam and -1 in lam


@pytest.mark.parametrize('n,b_dim,e_dim', [(1, 2, 4), (2, 4, 16)])
def test_corner_identify_z2(z2, n, b_dim, e_dim):
    report = corner_identify(z2, n)
    assert report['b_dim'] == report['b_expected'] == b_dim
    assert report['e_dim'] == report['e_expected'] == e_dim
    assert report['b_basis_in_corner']


def test_corner_identify_z3(z3):
    report = corner_identify(z3, 1)
    assert report['b_dim'] == 3
    assert report['e_dim'] == 6


def test_letter_images_lie_in_corner(z3, rng):
    sra = SraAlgebra(z3, 2, random_params(z3, rng))
    units = MatrixUnits(z3)
    embedding = EmbeddingMap(solve_theta_phi(z3), sra, units)
    f = sra.from_gamma_n(f_power(units, sra.gamma_n))
    qbar = embedding.qbar
    for letter in qbar.letters:
        tail = (qbar.tail(letter), 2)
        image = embedding.letter_image(0, letter, tail)
        assert not image.is_zero()
        assert sra.normal_form(sra.multiply(sra.multiply(f, image), f)) == sra.normal_form(image)


def test_letter_image_checks_tail(z3):
    sra = SraAlgebra(z3, 1, SraParams(z3, 1, 0))
    embedding = EmbeddingMap(solve_theta_phi(z3), sra)
    letter = embedding.qbar.letters[0]
    wrong = (embedding.qbar.tail(letter) + 1) % 3
    with pytest.raises(MoritaError):
        embedding.letter_image(0, letter, (wrong,))


def test_anchor_image_is_idempotent(z2):
    sra = SraAlgebra(z2, 2, SraParams(z2, 1, 1))
    embedding = EmbeddingMap(solve_theta_phi(z2), sra)
    e = embedding.anchor_image((0, 1))
    assert sra.normal_form(sra.multiply(e, e)) == e
    assert sra.normal_form(sra.multiply(e, embedding.anchor_image((1, 1)))).is_zero()


def test_embedding_rejects_other_group(z2, z3):
    with pytest.raises(MoritaError):
        EmbeddingMap(solve_theta_phi(z2), SraAlgebra(z3, 1, SraParams(z3, 1, 0)))


def test_verify_morita_z2_n1(z2, rng):
    report = verify_morita(z2, 1, random_params(z2, rng), 2, rng)
    assert report.residual_zero
    assert report.corner_dims == report.expected_dims == [2, 6, 12]
    assert report.passed
    data = report.to_dict()
    assert data['pass'] and data['failing_relations'] == []
    assert 'theta_phi' in data


def test_verify_morita_z2_n2(z2, rng):
    report = verify_morita(z2, 2, random_params(z2, rng), 1, rng, samples=3)
    assert report.relations_checked == 24
    assert report.passed


def test_verify_morita_z3_n1(z3, rng):
    report = verify_morita(z3, 1, random_params(z3, rng), 2, rng)
    assert report.passed


@pytest.mark.slow
def test_verify_morita_z3_n2(z3, rng):
    report = verify_morita(z3, 2, random_params(z3, rng), 2, rng, samples=3)
    assert report.passed


def test_verify_morita_k_zero_degenerates(z2):
    params = SraParams.from_class_values(z2, "1/2", 0, ["-3"])
    report = verify_morita(z2, 2, params, 1, random.Random(3), samples=2)
    assert report.nu == 0
    assert report.passed


def test_verify_morita_rejects_n_zero(z2):
    with pytest.raises(MoritaError):
        verify_morita(z2, 0, SraParams(z2, 1, 0), 1)


def test_verify_morita_async(z2, rng):
    params = random_params(z2, rng)
    with ThreadPoolExecutor(2) as executor:
        report = asyncio.run(verify_morita_async(z2, 1, params, 2, executor, random.Random(5)))
    assert report.passed
    assert report.corner_dims == [2, 6, 12]


@pytest.mark.parametrize('t,k', [(1, 0), ("2/3", 1), (0, "-5")])
def test_cherednik_dictionary(t, k):
    result = cherednik_dictionary_check(2, t, k)
    assert result['bijective']
    assert result['relations'] == result['targets']
    assert result['unmatched_relations'] == []


def test_cherednik_dictionary_three_particles():
    result = cherednik_dictionary_check(3, 1, 1)
    assert result['bijective']
    assert result['nu'] == '1/2'
