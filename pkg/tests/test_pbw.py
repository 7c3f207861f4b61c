import asyncio
from concurrent.futures import ThreadPoolExecutor

import pytest

from src.pbw import (PbwError, beta_from_params, beta_support_basis, bg_residual, check_params, compute_overlap,
                     family_directions, intersection_basis, koszul_check, necessity_check, non_transposition_beta,
                     residual_is_zero, solve_admissible, solve_admissible_async)
from src.quiver import affine_quiver, double, reorient
from src.scalars import Scalar
from src.wreathalg import WreathAlgebra


def test_support_requires_two_slots(affine_a1):
    with pytest.raises(PbwError):
        beta_support_basis(affine_a1, 1)
    with pytest.raises(PbwError):
        solve_admissible(affine_a1, 1)


def test_family_directions_are_equivariant(affine_a1):
    support = beta_support_basis(affine_a1, 2)
    directions = family_directions(affine_a1, 2)
    assert len(directions) == 3
    for beta in directions:
        assert beta.is_equivariant()
        assert support.combine(support.params_of(beta)) == beta


def test_beta_from_params_is_linear(affine_a2):
    lam = [Scalar.rational(1), Scalar.parse("-2/3"), Scalar.rational(4)]
    nu = Scalar.parse("5/7")
    beta = beta_from_params(affine_a2, 2, lam, nu)
    combined = None
    for coefficient, direction in zip(lam + [nu], family_directions(affine_a2, 2)):
        term = direction.scale(coefficient)
        combined = term if combined is None else combined + term
    assert beta == combined


def test_intersection_a1_n2(affine_a1):
    certificate = intersection_basis(affine_a1, 2)
    report = certificate.to_dict()
    assert report['intersection_dim'] == 16
    assert report['type_one'] == 0
    assert report['spans_equal']
    assert not report['outside_hypotheses']


@pytest.mark.slow
def test_intersection_a1_n3(affine_a1):
    certificate = intersection_basis(affine_a1, 3)
    assert certificate.brute_dim == 160
    assert certificate.spans_equal
    assert certificate.type_one > 0


def test_solve_admissible_a1(affine_a1):
    report = solve_admissible(affine_a1, 2)
    assert report.solution_dim == 3
    assert report.expected_dim == 3
    assert report.family_contained
    assert report.certified
    data = report.to_dict(include_basis=False)
    assert data['certified'] and 'basis' not in data
    assert data['intersection']['intersection_dim'] == 16


def test_solve_admissible_a2(affine_a2):
    report = solve_admissible(affine_a2, 2)
    assert report.solution_dim == 4
    assert report.spans_equal
    assert len(report.basis) == 4
    assert all(beta.is_equivariant() for beta in report.basis)


def test_solve_admissible_jordan_outside_hypotheses(jordan):
    report = solve_admissible(jordan, 2)
    assert report.outside_hypotheses
    assert report.solution_dim == 3
    assert report.family_rank == report.expected_dim == 2
    assert report.certified
    assert 'note' in report.to_dict(include_basis=False)


def test_solve_admissible_async_matches_sync(affine_a1):
    with ThreadPoolExecutor(2) as executor:
        report = asyncio.run(solve_admissible_async(affine_a1, 2, executor))
    assert report.solution_dim == 3
    assert report.certified


ACCEPTANCE_FIXTURES = [
    ('A', 1, 2),
    ('A', 2, 2),
    pytest.param('A', 1, 3, marks=pytest.mark.slow),
    pytest.param('D', 4, 2, marks=pytest.mark.slow),
]


@pytest.mark.parametrize('family,index,n', ACCEPTANCE_FIXTURES)
def test_necessity_check(family, index, n, rng):
    result = necessity_check(double(affine_quiver(family, index)), n, rng, samples=10)
    assert result == {'samples': 10, 'nonzero_residuals': 10, 'passed': True}


@pytest.mark.slow
@pytest.mark.parametrize('family,index,n', [('A', 1, 3), ('D', 4, 2)])
def test_solve_admissible_large_fixtures(family, index, n):
    qbar = double(affine_quiver(family, index))
    report = solve_admissible(qbar, n)
    assert report.solution_dim == report.expected_dim == len(qbar.vertices) + 1
    assert report.spans_equal
    assert report.certified


@pytest.mark.parametrize('flips', [{0}, {1, 2}, {0, 1, 2}])
def test_solution_dim_does_not_depend_on_orientation(flips):
    base = solve_admissible(double(affine_quiver('A', 2)), 2)
    flipped = solve_admissible(double(reorient(affine_quiver('A', 2), flips)), 2)
    assert flipped.solution_dim == base.solution_dim == 4
    assert flipped.certified


@pytest.mark.parametrize('lam,nu', [(None, 0), ([1, 2], "1/3"), (["-5/2", 0], 7)])
def test_check_params_certifies_family(affine_a1, lam, nu):
    result = check_params(affine_a1, 2, lam, nu)
    assert result['certified']
    assert result['nonzero_residuals'] == 0
    assert result['intersection_dim'] == 16


def test_single_bracket_direction_fails(affine_a1):
    support = beta_support_basis(affine_a1, 2)
    family = [support.params_of(beta) for beta in family_directions(affine_a1, 2)]
    overlap = compute_overlap(WreathAlgebra(affine_a1, 2))
    # almeno una direzione di base non è combinazione della famiglia
    failing = 0
    for index in range(len(support)):
        beta = support.direction(index)
        if not residual_is_zero(bg_residual(beta, affine_a1, 2, overlap)):
            failing += 1
    assert failing > 0
    assert len(support) > len(family)


@pytest.mark.slow
def test_non_transposition_orbit_is_obstructed(affine_a1):
    support = beta_support_basis(affine_a1, 3)
    beta = non_transposition_beta(support)
    assert beta is not None
    assert not residual_is_zero(bg_residual(beta, affine_a1, 3))


def test_koszul_a1_n1(affine_a1):
    result = koszul_check(affine_a1, 1, 3)
    assert result['dual_dims'] == [2, 4, 2, 0]
    assert result['hilbert_dims'][:3] == [2, 4, 6]
    assert result['passed']


def test_koszul_rejects_high_degree(affine_a1):
    with pytest.raises(PbwError):
        koszul_check(affine_a1, 1, 4)
