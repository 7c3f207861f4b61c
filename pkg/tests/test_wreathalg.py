import pytest

from src.quiver import affine_quiver, double, preprojective_hilbert_dims
from src.scalars import Scalar
from src.wreathalg import (WreathAlgebra, WreathAlgebraError, WreathElement, anchor, bracket, bracket_rhs_sign,
                           graded_dimension, multiply, multiply_monomials, orientation_iso_check, random_element,
                           random_monomial, relations_A, upsilon, upsilon_kernel_rank)


def test_anchor_products(affine_a1):
    alg = WreathAlgebra(affine_a1, 2)
    e = anchor((0, 1))
    assert multiply_monomials(e, e) == e
    assert multiply_monomials(e, anchor((1, 1))) is None
    # e_{(0,1)} s = s e_{(1,0)}
    s = anchor((0, 1), (1, 0))
    assert multiply_monomials(s, anchor((1, 0))) == s
    assert multiply_monomials(s, anchor((0, 1))) is None
    assert alg.identity == (0, 1)


def test_permutation_moves_letter_slot(affine_a1):
    alg = WreathAlgebra(affine_a1, 2)
    letter = WreathElement.monomial(alg.letter(0, 0, (0, 1)))
    s_left = WreathElement.monomial(anchor((1, 1), (1, 0)))
    s_right = WreathElement.monomial(anchor((0, 1), (1, 0)))
    moved = multiply(multiply(s_left, letter), s_right)
    assert moved == WreathElement.monomial(alg.letter(1, 0, (1, 0)))
    assert moved == letter.conjugate((1, 0))


@pytest.mark.parametrize('quiver_fixture', ['affine_a1', 'affine_a2'])
def test_multiply_is_associative_and_unital(quiver_fixture, request, rng):
    alg = WreathAlgebra(request.getfixturevalue(quiver_fixture), 2)
    unit = WreathElement.zero()
    for vertex in alg.vertices:
        unit = unit + alg.anchor_element(vertex)
    for _ in range(100):
        x, y, z = (random_element(alg, rng, 2) for _ in range(3))
        assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))
        assert multiply(unit, x) == x == multiply(x, unit)


def test_non_composable_product_is_zero(affine_a2):
    alg = WreathAlgebra(affine_a2, 1)
    first = WreathElement.monomial(alg.letter(0, 0, (0,)))
    assert multiply(first, first).is_zero()


def test_bracket_lies_in_upsilon_kernel(affine_a1):
    alg = WreathAlgebra(affine_a1, 2)
    element = bracket(alg, (0, 0, (0, 0)), (1, 1, (0, 1)))
    assert len(element.terms) == 2
    assert upsilon(element, 2) == {}
    with pytest.raises(WreathAlgebraError):
        bracket(alg, (0, 0, (0, 0)), (0, 1, (1, 0)))
    with pytest.raises(WreathAlgebraError):
        bracket(alg, (0, 0, (0, 1)), (1, 1, (0, 1)))


def test_upsilon_kernel_is_spanned_by_brackets(affine_a1):
    ranks = upsilon_kernel_rank(WreathAlgebra(affine_a1, 2))
    assert ranks['kernel_dim'] == ranks['bracket_count'] == ranks['bracket_rank'] == ranks['brackets_in_kernel']
    assert ranks['bracket_count'] == 16


def test_upsilon_rejects_permutations(affine_a1):
    with pytest.raises(WreathAlgebraError):
        upsilon(WreathElement.monomial(anchor((0, 0), (1, 0))), 2)


def test_relations_a1_counts(affine_a1):
    relations = relations_A(affine_a1, 2, [1, 2], Scalar.parse("1/3"))
    kinds = [r.kind for r in relations.relations]
    assert kinds.count('i') == 8
    assert kinds.count('ii') == 16
    assert not relations.is_homogeneous()
    assert len(relations_A(affine_a1, 1).relations) == 2


def test_type_i_lower_terms(affine_a1):
    nu = Scalar.parse("2/5")
    relations = relations_A(affine_a1, 2, [3, 7], nu)
    rel = next(r for r in relations.relations if r.key == ('r', (1, 1), 0))
    # λ_1 e_{(1,1)} + ν e_{(1,1)} s_{01}
    assert rel.lower.terms == {anchor((1, 1)): Scalar.rational(7), anchor((1, 1), (1, 0)): nu}
    rel = next(r for r in relations.relations if r.key == ('r', (0, 1), 0))
    assert rel.lower.terms == {anchor((0, 1)): Scalar.rational(3)}


def test_type_ii_sign(affine_a1):
    qbar = affine_a1
    assert bracket_rhs_sign(qbar, 1, 0) == 1
    assert bracket_rhs_sign(qbar, 0, 1) == -1
    assert bracket_rhs_sign(qbar, 0, 3) == 0
    nu = Scalar.parse("1/2")
    relations = relations_A(qbar, 2, None, nu)
    rel = next(r for r in relations.relations if r.key == ('b', 0, 1, 0, 1, (0, 1)))
    # ⌊a_0, a*_1⌋ + ν e_{(1,0)} s_{01}
    assert rel.lower.terms == {anchor((1, 0), (1, 0)): -nu}


def test_lambda_length_is_checked(affine_a1):
    with pytest.raises(WreathAlgebraError):
        relations_A(affine_a1, 2, [1, 2, 3])


def test_wreath_algebra_rejects_n_zero(affine_a1):
    with pytest.raises(WreathAlgebraError):
        WreathAlgebra(affine_a1, 0)


def test_graded_dimension_a1_n1(affine_a1):
    assert graded_dimension(affine_a1, 1, relations_A(affine_a1, 1), 4) == [2, 4, 6, 8, 10]


def test_graded_dimension_a2(affine_a2):
    assert graded_dimension(affine_a2, 1, relations_A(affine_a2, 1), 2) == [3, 6, 9]
    assert graded_dimension(affine_a2, 2, relations_A(affine_a2, 2), 2) == [18, 72, 180]


@pytest.mark.slow
def test_graded_dimension_a1_n2(affine_a1):
    assert graded_dimension(affine_a1, 2, relations_A(affine_a1, 2), 3) == [8, 32, 80, 160]


def test_graded_dimension_matches_koszul_recursion():
    quiver = affine_quiver('D', 4)
    qbar = double(quiver)
    oracle = [sum(sum(row) for row in block) for block in preprojective_hilbert_dims(quiver, 3)]
    assert graded_dimension(qbar, 1, relations_A(qbar, 1), 3) == oracle


def test_graded_dimension_of_free_algebra(affine_a1):
    alg = WreathAlgebra(affine_a1, 2)
    assert graded_dimension(affine_a1, 2, None, 2) == [2 * alg.path_count(k) for k in range(3)]


@pytest.mark.parametrize('flips', [{0}, {1, 2}, {0, 1, 2}])
def test_orientation_independence(flips):
    assert orientation_iso_check(affine_quiver('A', 2), flips, n=2)


def test_orientation_independence_with_double_edge():
    assert orientation_iso_check(affine_quiver('A', 1), {1}, n=2)


def test_random_monomial_is_a_path(affine_a2, rng):
    alg = WreathAlgebra(affine_a2, 2)
    for _ in range(20):
        mono = random_monomial(alg, rng, 3)
        assert alg.path(mono.letters, mono.tail, mono.perm) == mono
