import cmath
from itertools import combinations
from math import comb, isclose, pi

import pytest

from lgquot.partitions import (
    IndexTuple,
    Partition,
    StrictPartition,
    dual_partition,
    filter_no_opposites,
    filter_unit_product,
    root_tuples,
    staircase,
    strict_partitions,
    summation_tuples,
)


def test_partition_normalizes_trailing_zeros():
    assert Partition((3, 1, 0, 0)).parts == (3, 1)
    assert Partition(()).parts == ()
    assert Partition((2, 2, 1)).weight == 5
    assert Partition((2, 2, 1)).length == 3


def test_partition_rejects_bad_input():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, -1))


def test_strict_partition_validation():
    assert StrictPartition(3, (3, 1)).weight == 4
    with pytest.raises(ValueError):
        StrictPartition(2, (3,))
    with pytest.raises(ValueError):
        StrictPartition(3, (2, 2))
    with pytest.raises(ValueError):
        StrictPartition(0, ())


def test_strict_partitions_small_ranks():
    assert [sp.parts for sp in strict_partitions(1)] == [(), (1,)]
    assert [sp.parts for sp in strict_partitions(2)] == [(), (1,), (2,), (2, 1)]
    assert len(strict_partitions(3)) == 8


def test_strict_partitions_order_and_cardinality():
    for n in range(1, 11):
        sps = strict_partitions(n)
        assert len(sps) == 2**n
        # against the subset bijection
        subsets = {tuple(sorted(s, reverse=True)) for r in range(n + 1)
                   for s in combinations(range(1, n + 1), r)}
        assert {sp.parts for sp in sps} == subsets
        weights = [sp.weight for sp in sps]
        assert weights == sorted(weights)
        for a, b in zip(sps, sps[1:]):
            if a.weight == b.weight:
                assert a.parts > b.parts  # ties broken lexicographically descending


def test_dual_partition_examples():
    assert dual_partition(StrictPartition(2, ())).parts == (2, 1)
    assert dual_partition(StrictPartition(3, (3, 1))).parts == (2,)
    assert dual_partition(staircase(4)).parts == ()


def test_dual_partition_involution_and_weight():
    for n in range(1, 7):
        for sp in strict_partitions(n):
            dual = dual_partition(sp)
            assert dual_partition(dual) == sp
            assert sp.weight + dual.weight == n * (n + 1) // 2


def test_staircase():
    assert staircase(1).parts == (1,)
    assert staircase(2).parts == (2, 1)
    assert staircase(4).parts == (4, 3, 2, 1)
    assert staircase(4).weight == 10


def test_index_tuple_validation():
    IndexTuple(2, (-1, 1))
    with pytest.raises(ValueError):
        IndexTuple(2, (-1, 2))  # mixed parity
    with pytest.raises(ValueError):
        IndexTuple(2, (1, -1))  # not increasing
    with pytest.raises(ValueError):
        IndexTuple(2, (-3, 1))  # below window
    with pytest.raises(ValueError):
        IndexTuple(3, (0, 2, 10))  # above window
    with pytest.raises(ValueError):
        IndexTuple(3, (1, 2, 4))  # odd N needs even doubled entries


def test_root_tuples_small():
    two = root_tuples(2)
    assert len(two) == 6
    assert all(set(t.doubled) <= {-1, 1, 3, 5} for t in two)
    assert len(root_tuples(3)) == 20
    # N=1 window is j in {0, 1}
    assert [t.doubled for t in root_tuples(1)] == [(0,), (2,)]


def test_root_tuples_cardinality_sorted_unique():
    for N in range(1, 9):
        tuples = root_tuples(N)
        m = N // 2
        expected = comb(4 * m + 2, N) if N % 2 else comb(4 * m, N)
        assert len(tuples) == expected
        assert len(set(tuples)) == len(tuples)
        for t in tuples:
            assert list(t.doubled) == sorted(t.doubled)


def test_filters_match_hand_enumeration_for_two():
    kept = filter_no_opposites(root_tuples(2))
    assert [t.doubled for t in kept] == [(-1, 1), (-1, 5), (1, 3), (3, 5)]
    even = filter_unit_product(kept)
    assert [t.doubled for t in even] == [(-1, 1), (3, 5)]


def test_summation_tuples_cardinality_law():
    assert len(summation_tuples(3)) == 4
    for n in range(1, 11):
        assert len(summation_tuples(n + 1)) == 2**n


def test_filter_conditions_against_complex_arithmetic():
    # independent re-check of the residue filters with actual roots of unity
    for N in range(2, 6):
        all_tuples = root_tuples(N)
        kept = set(filter_unit_product(filter_no_opposites(all_tuples)))
        for t in all_tuples:
            coords = [cmath.exp(1j * pi * d / (2 * N)) for d in t.doubled]
            no_opposites = all(
                abs(coords[a] + coords[b]) > 1e-9
                for a in range(N)
                for b in range(a + 1, N)
            )
            product = 1
            for z in coords:
                product *= z
            unit = isclose(product.real, 1, abs_tol=1e-9) and isclose(
                product.imag, 0, abs_tol=1e-9
            )
            assert (t in kept) == (no_opposites and unit)
