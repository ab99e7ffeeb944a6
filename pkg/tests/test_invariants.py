import random
from fractions import Fraction

import pytest

from lgquot.invariants import (
    NonHomogeneousError,
    ParityError,
    SchubertExpression,
    _point_tables,
    expected_dimension,
    gw_invariant,
    intersection_number,
    maximal_count,
    maximal_subbundle_degree,
    required_degree,
    verify_hecke_recursion,
    verify_staircase_insertion,
    verify_twist_identity,
)
from lgquot.partitions import StrictPartition, staircase

ONE = SchubertExpression.one()


def test_expected_dimension_examples():
    assert expected_dimension(2, -1, 0, 2) == 0
    assert expected_dimension(1, 0, 1, 2) == 0
    base = expected_dimension(3, -2, 1, 4)
    assert expected_dimension(3, -3, 1, 4) == base + 4


def test_maximal_subbundle_degree_examples():
    assert maximal_subbundle_degree(2, 2, 0) == -1
    assert maximal_subbundle_degree(1, 2, 1) == 0
    assert maximal_subbundle_degree(2, 3, 0) == -2
    assert maximal_subbundle_degree(3, 2, 0) == -1  # ceil(-3/2)


def test_required_degree_examples():
    assert required_degree(2, 0, [(1,), (1,), (1,)]) == 0
    assert required_degree(1, 2, []) is None
    assert required_degree(1, 0, [(1,), (1,), (1,)]) == 1
    assert required_degree(2, 0, []) is None  # forced degree would be -1


def test_gw_invariant_classical_values():
    assert gw_invariant(2, 0, 0, [(1,), (1,), (1,)]) == 2
    assert gw_invariant(1, 0, 1, [(1,), (1,), (1,)]) == 1
    assert gw_invariant(1, 1, 0, []) == 2


def test_gw_invariant_dimension_mismatch_is_zero():
    assert gw_invariant(2, 0, 5, [(1,)]) == 0
    assert gw_invariant(1, 2, 0, []) == 0
    assert gw_invariant(2, 0, -1, []) == 0  # negative degrees never contribute


def test_gw_invariant_accepts_strict_partition_objects():
    ins = [StrictPartition(2, (1,))] * 3
    assert gw_invariant(2, 0, 0, ins) == 2


def test_gw_invariant_rejects_bad_insertions():
    with pytest.raises(ValueError):
        gw_invariant(2, 0, 0, [(3,)])
    with pytest.raises(ValueError):
        gw_invariant(2, 0, 0, [(1, 1)])
    with pytest.raises(TypeError):
        gw_invariant(2, 0, None, [])


def test_gw_invariant_permutation_invariance():
    rng = random.Random(0)
    ins = [(2, 1), (1,), (2,)]
    d = required_degree(2, 1, ins)
    assert d == 2
    value = gw_invariant(2, 1, d, ins)
    for _ in range(5):
        rng.shuffle(ins)
        assert gw_invariant(2, 1, d, ins) == value


def test_gw_invariant_nonnegative_at_positive_genus():
    for n in (1, 2, 3, 4):
        for g in (1, 2, 3, 4, 5):
            for count in range(5):
                rng = random.Random(n * 100 + g * 10 + count)
                ins = [
                    tuple(sorted(rng.sample(range(1, n + 1), rng.randint(0, n)),
                                 reverse=True))
                    for _ in range(count)
                ]
                d = required_degree(n, g, ins)
                if d is not None:
                    assert gw_invariant(n, g, d, ins) >= 0


def test_intersection_number_known_counts():
    assert intersection_number(2, 2, 0, -1, ONE) == 16
    assert intersection_number(2, 2, -1, -2, ONE) == 20


def test_intersection_number_degree_mismatch():
    assert intersection_number(2, 2, 0, -3, ONE) == 0
    wrong = SchubertExpression.special(1) ** 2 + SchubertExpression.special(2)
    assert intersection_number(2, 2, 0, -1, wrong) == 0  # homogeneous but wrong degree


def test_intersection_number_rejects_inhomogeneous_and_overrank():
    mixed = SchubertExpression.special(1) + SchubertExpression.special(2)
    with pytest.raises(NonHomogeneousError):
        intersection_number(2, 2, 0, -1, mixed)
    with pytest.raises(ValueError):
        intersection_number(2, 2, 0, -1, SchubertExpression.special(3))
    with pytest.raises(TypeError):
        intersection_number(2, 2, 0, -1, 1)


def test_intersection_number_matches_gw_at_zero_twist():
    # products of qtilde factors at ell = 0 recover the invariants with e = -d
    cases = [
        (2, 0, [(1,), (1,), (1,)]),
        (1, 0, [(1,), (1,), (1,)]),
        (2, 2, [(2, 1), (2, 1)]),
        (3, 1, [(2, 1), (1,), (2,)]),
    ]
    for n, g, ins in cases:
        d = required_degree(n, g, ins)
        if d is None:
            continue
        P = SchubertExpression.one()
        for parts in ins:
            P = P * SchubertExpression.qtilde_factor(parts)
        assert intersection_number(n, g, 0, -d, P) == gw_invariant(n, g, d, ins)


def test_prefactor_consistency_at_zero_twist():
    # for ell = 0 the prefactor exponent n(g-1)+e matches n(g-1)-d at d = -e
    for n, g, e in [(1, 2, -1), (2, 3, -2), (3, 2, 0)]:
        assert expected_dimension(n, e, 0, g) == expected_dimension(n, e, 0, g)
        assert Fraction(2) ** (n * (g - 1) + e) == Fraction(2) ** (n * (g - 1) - (-e))


def test_maximal_count_closed_forms():
    assert maximal_count(1, 2, 1) == 4
    assert maximal_count(2, 2, -1) == 20
    assert maximal_count(2, 2, 0) == 16
    assert maximal_count(2, 3, 0) == 112
    for g in range(2, 7):
        ell = (g + 1) % 2
        assert maximal_count(1, g, ell) == 2**g


def test_maximal_count_parity_error():
    with pytest.raises(ParityError):
        maximal_count(1, 2, 0)
    with pytest.raises(ParityError):
        maximal_count(3, 3, 1)
    # n even is always admissible
    maximal_count(2, 2, 1)


def test_maximal_count_agrees_with_intersection_number():
    for n, g, ell in [(1, 2, 1), (2, 2, 0), (2, 2, -1), (2, 4, 1), (3, 2, 1), (3, 3, 0)]:
        e = n * (ell - g + 1) // 2
        assert maximal_count(n, g, ell) == intersection_number(n, g, ell, e, ONE)


def test_point_from_tuple_matches_complex_coordinates():
    import cmath

    from lgquot.cyclotomic import make_backend
    from lgquot.invariants import point_from_tuple
    from lgquot.partitions import summation_tuples

    backend = make_backend("exact", 2)
    for J in summation_tuples(3):
        point = point_from_tuple(backend, J)
        for value, doubled in zip(point, J.doubled):
            expected = cmath.exp(1j * cmath.pi * doubled / 6)
            assert abs(value.to_complex() - expected) < 1e-12


def test_staircase_qtilde_squares_to_two_power():
    # on every admissible point the staircase qtilde value squares to 2^n
    for n in range(1, 6):
        backend, tables = _point_tables(n, "exact")
        two_n = backend.from_fraction(2**n)
        for table in tables:
            v = table.qtilde(staircase(n).parts)
            assert v * v == two_n


def test_schubert_expression_algebra():
    a1 = SchubertExpression.special(1)
    a2 = SchubertExpression.special(2)
    expr = 2 * a1**2 - a2
    assert expr.is_homogeneous()
    assert expr.degree() == 2
    assert (a1 + a2).is_homogeneous() is False
    with pytest.raises(NonHomogeneousError):
        (a1 + a2).degree()
    assert (expr - expr).terms == ()
    assert (a1 * Fraction(1, 2) * 2).terms == a1.terms
    assert (a1**0).terms == ONE.terms
    assert SchubertExpression.constant(0).degree() == 0


def test_schubert_expression_evaluation_matches_direct_product():
    backend, tables = _point_tables(2, "exact")
    expr = SchubertExpression.monomial([(2, 1), (1,), (1,)], Fraction(3, 2))
    for table in tables:
        direct = backend.from_fraction(Fraction(3, 2))
        for parts in [(2, 1), (1,), (1,)]:
            direct = direct * table.qtilde(parts)
        assert expr.evaluate(table) == direct


def test_verify_twist_identity_cases():
    assert verify_twist_identity(2, 2, 0, -1, ONE, 1)
    # the shifted side recomputes the same 16 at (ell, e) = (2, 1)
    assert intersection_number(2, 2, 2, 1, ONE) == 16
    assert verify_twist_identity(1, 2, 1, 0, ONE, -2)
    assert verify_twist_identity(2, 3, -1, -4, SchubertExpression.special(1) ** 3, 0)


def test_verify_hecke_recursion_cases():
    assert verify_hecke_recursion(1, 2, 1, 0, ONE, 1)
    # both sides of the rank-one case evaluate to 4
    assert intersection_number(1, 2, 1, 0, ONE) == 4
    staircase_squared = SchubertExpression.qtilde_factor((1,)) ** 2
    assert intersection_number(1, 2, 1, -1, staircase_squared) == 4
    assert verify_hecke_recursion(2, 2, 0, -1, ONE, 1)
    assert verify_hecke_recursion(2, 2, 0, -1, ONE, 0)
    assert verify_hecke_recursion(2, 2, 0, -1, ONE, 2)


def test_verify_staircase_insertion_cases():
    assert verify_staircase_insertion(1, 1, 0, [], 1)
    assert verify_staircase_insertion(2, 0, 0, [(1,), (1,), (1,)], 1)
    assert verify_staircase_insertion(2, 1, 1, [(2, 1)], 0)
    with pytest.raises(ValueError):
        verify_staircase_insertion(1, 1, 0, [], -1)


def test_float_backend_matches_exact_on_small_values():
    assert gw_invariant(2, 0, 0, [(1,), (1,), (1,)], "float") == 2
    assert maximal_count(2, 2, -1, "float") == 20
    assert maximal_count(2, 3, 0, "float") == 112
    assert intersection_number(2, 2, 0, -1, ONE, "float") == 16


def test_exact_values_are_integral_on_a_small_grid():
    # zero cyclotomic residual: extraction would raise otherwise
    for n in (1, 2):
        for g in range(0, 4):
            for e in range(-4, 1):
                for ell in (-1, 0):
                    D = expected_dimension(n, e, ell, g)
                    if 0 <= D <= 8:
                        P = SchubertExpression.special(1) ** D
                        value = intersection_number(n, g, ell, e, P)
                        assert isinstance(value, int)
                        assert value >= 0
