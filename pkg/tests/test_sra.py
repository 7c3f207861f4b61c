import pytest

from src.groups import binary_dihedral, cyclic_group
from src.scalars import Scalar
from src.sra import (SraAlgebra, SraElement, SraError, SraParams, basis_vector, certify_kappa_relations,
                     commutator_rhs, enumerate_reflections, kappa, letter_index, omega_s, omega_tables_check,
                     parse_word, random_params, reflection_classes, reflection_summary, relations_R1_R2)


@pytest.mark.parametrize('l,n,type_s,type_gamma,classes', [
    (2, 2, 2, 2, 2),
    (3, 2, 3, 4, 3),
    (3, 3, 9, 6, 3),
])
def test_reflection_counts(l, n, type_s, type_gamma, classes):
    summary = reflection_summary(cyclic_group(l), n)
    assert summary['type_S'] == type_s
    assert summary['type_Gamma'] == type_gamma
    assert summary['count'] == type_s + type_gamma
    assert summary['classes'] == classes
    transpositions = [r for r in summary['reflections'] if r['transposition']]
    assert len(transpositions) == type_s


def test_reflection_classes_partition(z3):
    classes = reflection_classes(z3, 2)
    flat = [key for cls in classes for key in cls]
    assert len(flat) == len(set(flat)) == len(enumerate_reflections(z3, 2))


@pytest.mark.parametrize('l,n', [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_omega_tables(l, n):
    result = omega_tables_check(cyclic_group(l), n)
    assert result['pairs_checked'] == result['reflections'] * (2 * n) ** 2


def test_omega_tables_binary_dihedral():
    assert omega_tables_check(binary_dihedral(2), 2)['reflections'] > 0


def test_params_validation(z3):
    with pytest.raises(SraError):
        SraParams(z3, 1, 0, {z3.identity: 1})
    with pytest.raises(SraError):
        SraParams.from_class_values(z3, 1, 0, ["1/2"])
    params = SraParams.from_class_values(z3, "1/2", 3, [1, 2])
    assert params.t == Scalar.parse("1/2")
    assert params.to_dict()['k'] == '3'
    assert len(params.to_dict()['cprime']) == 2


def test_params_must_be_class_functions():
    group = binary_dihedral(2)
    cls = next(c for c in group.conjugacy_classes() if len(c) == 2)
    with pytest.raises(SraError):
        SraParams(group, 1, 1, {cls[0]: 1})
    SraParams(group, 1, 1, {g: 1 for g in cls})


def test_certify_kappa_relations_random_params(z3, rng):
    params = random_params(z3, rng)
    assert certify_kappa_relations(params, 2) == 16


def test_relations_r1_r2_vanish_in_normal_form(z2, rng):
    params = random_params(z2, rng)
    sra = SraAlgebra(z2, 2, params)
    relations = relations_R1_R2(z2, 2, params)
    assert len(relations) == 2 + 2 * 4
    assert [r.label for r in relations][:2] == ['R1[1]', 'R1[2]']
    for relation in relations:
        assert sra.normal_form(relation.element).is_zero()


def test_weyl_relation(z2):
    sra = SraAlgebra(z2, 1, SraParams(z2, 1, 0))
    x, y = letter_index(0, 0), letter_index(0, 1)
    # y x = x y - 1 quando t = 1 e c′ = 0
    expected = sra.word((x, y)) - sra.group_element(sra.identity)
    assert sra.normal_form(sra.word((y, x))) == expected


def test_normal_form_uses_commutator_table(z3, rng):
    params = random_params(z3, rng)
    sra = SraAlgebra(z3, 2, params)
    p, q = letter_index(1, 1), letter_index(0, 0)
    expected = sra.word((q, p)) + sra.from_gamma_n(commutator_rhs(params, 2, p, q))
    assert sra.normal_form(sra.word((p, q))) == expected


def test_group_action_commutes_through_words(z3):
    sra = SraAlgebra(z3, 2, SraParams(z3, 1, "1/2", {1: 1, 2: 1}))
    g = sra.gamma_n.perm_element((1, 0))
    left = sra.multiply_nf(sra.group_element(g), sra.word((letter_index(0, 0),)))
    # g x_1 = x_2 g
    assert left == SraElement({((letter_index(1, 0),), g): 1})


def test_multiply_nf_is_associative(z2, rng):
    sra = SraAlgebra(z2, 2, random_params(z2, rng))
    elements = sra.gamma_n.elements()
    for _ in range(5):
        a, b, c = (SraElement({(tuple(rng.randrange(4) for _ in range(rng.randint(0, 2))),
                                 rng.choice(elements)): rng.randint(1, 3)}) for _ in range(3))
        assert sra.multiply_nf(sra.multiply_nf(a, b), c) == sra.multiply_nf(a, sra.multiply_nf(b, c))


def test_filtered_dimension_z2(z2, rng):
    sra = SraAlgebra(z2, 2, random_params(z2, rng))
    assert sra.filtered_dimension(3) == {'computed': 280, 'expected': 280}


@pytest.mark.slow
def test_filtered_dimension_z3(z3, rng):
    sra = SraAlgebra(z3, 2, random_params(z3, rng))
    assert sra.filtered_dimension(2) == {'computed': 270, 'expected': 270}


def test_sra_rejects_params_of_other_group(z2, z3):
    with pytest.raises(SraError):
        SraAlgebra(z2, 1, SraParams(z3, 1, 0))


def test_parse_word():
    assert parse_word("y1*x2", 2) == (1, 2)
    assert parse_word("x1 y1 x2", 2) == (0, 1, 2)
    assert parse_word("x1y2", 2) == (0, 3)
    for bad in ("x3", "z1", "x1*q"):
        with pytest.raises(SraError):
            parse_word(bad, 2)


def test_json_terms(z2):
    sra = SraAlgebra(z2, 1, SraParams(z2, 1, 0))
    terms = sra.to_json_terms(sra.normal_form(sra.word((1, 0))))
    assert [t['word'] for t in terms] == ['1', 'x1*y1']
    assert terms[0]['coeff'] == '-1'


def test_omega_s_on_site_reflection(z2):
    s = next(r for r in enumerate_reflections(z2, 2) if r.kind == 'Gamma' and r.sites == (0,))
    x1, y1, x2, y2 = (basis_vector(2, p) for p in range(4))
    assert omega_s(s, x1, y1) == Scalar.one()
    assert omega_s(s, y1, x1) == -Scalar.one()
    assert omega_s(s, x2, y2).is_zero()
    assert omega_s(s, x1, y2).is_zero()


def test_kappa_weyl_part_and_site_reflections(z2):
    params = SraParams(z2, 1, 0, {1: "3/2"})
    x1, y1 = basis_vector(1, 0), basis_vector(1, 1)
    assert kappa(x1, y1, params) == {((0,), (0,)): Scalar.one(), ((1,), (0,)): Scalar.parse("3/2")}
    assert kappa(x1, x1, params) == {}
