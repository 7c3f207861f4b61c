from fractions import Fraction

import pytest

from src.scalars import (ExactMatrix, RowEchelon, Scalar, ScalarZeroDivisionError, field_ops, kernel_basis,
                         rank_of, same_span, subspace_intersection)


def test_zeta4_squared_is_minus_one():
    i = Scalar.zeta(4)
    assert field_ops(i, i, 'mul') == -1


def test_cube_roots_of_unity_sum_to_zero():
    z = Scalar.zeta(3)
    assert (1 + z + z * z).is_zero()


def test_inverse_by_extended_gcd():
    x = 1 - Scalar.zeta(5)
    assert field_ops(x.inverse(), x, 'mul') == 1
    assert field_ops(Scalar.one(), x, 'div') * x == 1


def test_division_by_zero_raises():
    with pytest.raises(ScalarZeroDivisionError):
        field_ops(Scalar.one(), Scalar.zero(), 'div')
    with pytest.raises(ZeroDivisionError):
        Scalar.zero().inverse()


def test_cross_conductor_lift():
    # ζ₄ · ζ₃ vive in ℚ(ζ₁₂)
    product = Scalar.zeta(4) * Scalar.zeta(3)
    assert product == Scalar.zeta(12, 7)
    assert Scalar.zeta(6, 2) == Scalar.zeta(3)


def test_conjugate_and_power():
    z = Scalar.zeta(5)
    assert z.conjugate() == z ** -1
    assert z ** 5 == 1
    assert (z * z.conjugate()) == 1


def test_parse_rationals():
    assert Scalar.parse("3/2") == Fraction(3, 2)
    assert Scalar.parse(" -4 ") == -4
    assert str(Scalar.parse("6/4")) == "3/2"
    with pytest.raises(ValueError):
        Scalar.parse("1.5x")


def test_kernel_of_zero_and_identity():
    assert len(kernel_basis(ExactMatrix(2, 2))) == 2
    assert kernel_basis(ExactMatrix.identity(3)) == []


def test_kernel_dimension_matches_rank(rng):
    for _ in range(3):
        data = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(7)] for _ in range(5)]
        matrix = ExactMatrix.from_rows(data)
        basis = kernel_basis(matrix)
        assert len(basis) == 7 - matrix.rank()
        for vector in basis:
            assert all(v.is_zero() for v in matrix.apply(vector))


def test_kernel_of_dependent_rows():
    matrix = ExactMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    basis = kernel_basis(matrix)
    assert len(basis) == 2
    assert matrix.rank() == 1


def test_solve_and_inconsistent_system():
    matrix = ExactMatrix.from_rows([[1, 1], [1, -1]])
    assert matrix.solve([3, 1]) == [2, 1]
    singular = ExactMatrix.from_rows([[1, 1], [2, 2]])
    assert singular.solve([1, 3]) is None


def test_subspace_intersection():
    e = lambda *keys: {k: Scalar.one() for k in keys}
    left = [e('a'), e('b')]
    right = [e('b', 'c'), e('c')]
    basis = subspace_intersection(left, right)
    assert len(basis) == 1
    assert same_span(basis, [e('b')])


def test_row_echelon_rank_and_contains():
    echelon = RowEchelon()
    assert echelon.add({'x': Scalar.one(), 'y': Scalar.rational(2)})
    assert not echelon.add({'x': Scalar.rational(3), 'y': Scalar.rational(6)})
    assert echelon.contains({'x': Scalar.rational(-1), 'y': Scalar.rational(-2)})
    assert echelon.rank == 1
    assert rank_of([{'x': Scalar.zeta(3)}, {'y': Scalar.one()}]) == 2


def _random_scalar(rng, conductor, nonzero=False):
    while True:
        value = Scalar([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(conductor)], conductor)
        if not (nonzero and value.is_zero()):
            return value


@pytest.mark.parametrize('conductor', [1, 2, 3, 4, 5, 8, 12])
def test_field_axioms(conductor, rng):
    for _ in range(10):
        a, b, c = (_random_scalar(rng, conductor) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        x = _random_scalar(rng, conductor, nonzero=True)
        assert x * x.inverse() == 1
        assert field_ops(field_ops(a, x, 'div'), x, 'mul') == a


def test_field_axioms_across_conductors(rng):
    for _ in range(10):
        a, b, c = _random_scalar(rng, 4), _random_scalar(rng, 3), _random_scalar(rng, 5)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_hash_agrees_with_equality_across_conductors():
    assert hash(Scalar.zeta(3)) == hash(Scalar.zeta(12, 4)) == hash(Scalar.zeta(6, 2))
    assert hash(Scalar.zeta(4) * Scalar.zeta(3)) == hash(Scalar.zeta(12, 7))
    assert hash(Scalar.zeta(8, 4)) == hash(Scalar.rational(-1)) == hash(-1)
    assert len({Scalar.zeta(5, k) for k in range(1, 5)} | {Scalar.zeta(10, 6)}) == 4
    assert len({hash(Scalar.zeta(7, k)) for k in range(1, 7)}) == 6
