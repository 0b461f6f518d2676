from collections import Counter

import pytest

from mirtrace.partitions import (ClassDatum, Partition, conjugate, datum_from_pairs, h_prop4,
                                 hook_arm_leg, partitions_of, predict_zeta_multiset,
                                 render_prediction, verify_conjugation_symmetry)
from mirtrace.tate import LocalZetaFactor as Z


def brute_hook(rows, j, k):
    """Count hook boxes directly from the set of diagram cells."""
    cells = {(r, c) for r, m in enumerate(rows, 1) for c in range(1, m + 1)}
    arm = sum(1 for (r, c) in cells if r == j and c > k)
    leg = sum(1 for (r, c) in cells if c == k and r > j)
    return arm + leg + 1, arm, leg


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition(())
    assert Partition.of(3, 1).size == 4


@pytest.mark.parametrize("rows,expected", [((1,), (1,)), ((4,), (1, 1, 1, 1)), ((3, 1), (2, 1, 1))])
def test_conjugate(rows, expected):
    assert conjugate(Partition(rows)).rows == expected


def test_conjugate_involution_up_to_20():
    for n in range(1, 21):
        for lam in partitions_of(n):
            assert conjugate(conjugate(lam)) == lam


def test_partition_counts():
    # p(n) for n = 1..12
    assert [sum(1 for _ in partitions_of(n)) for n in range(1, 13)] == \
        [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


@pytest.mark.parametrize("rows,box,expected", [
    ((1,), (1, 1), (1, 0, 0)), ((2,), (1, 1), (2, 1, 0)), ((2, 1), (1, 1), (3, 1, 1))])
def test_hook_arm_leg(rows, box, expected):
    assert hook_arm_leg(Partition(rows), *box) == expected == brute_hook(rows, *box)


def test_out_of_diagram_box():
    with pytest.raises(ValueError):
        hook_arm_leg(Partition((2,)), 1, 3)
    with pytest.raises(ValueError):
        h_prop4(Partition((2,)), 2, 1)


@pytest.mark.parametrize("m", range(1, 7))
def test_h_prop4_single_row(m):
    lam = Partition((m,))
    assert [h_prop4(lam, 1, k) for k in range(1, m + 1)] == [m - k + 1 for k in range(1, m + 1)]


def test_h_prop4_column():
    assert h_prop4(Partition((1, 1)), 1, 1) == 2


def test_h_prop4_matches_brute_force_up_to_12():
    for n in range(1, 13):
        for lam in partitions_of(n):
            for j, k in lam.boxes():
                assert h_prop4(lam, j, k) == brute_hook(lam.rows, j, k)[0]


def test_box_count_and_first_column_hooks():
    for n in range(1, 10):
        for lam in partitions_of(n):
            assert sum(1 for _ in lam.boxes()) == n
            first = [h_prop4(lam, j, 1) for j in range(1, len(lam) + 1)]
            assert len(set(first)) == len(first)


LINEAR = (-1, 1)          # t - 1
OTHER = (-2, 1)           # t - 2
QUADRATIC = (-5, 0, 1)    # t^2 - 5


@pytest.mark.parametrize("pairs,expected", [
    ([(QUADRATIC, [1])], {Z(2, 1, 0): 1}),
    ([(LINEAR, [1]), (OTHER, [1])], {Z(1, 1, 0): 2}),
    ([(LINEAR, [2])], {Z(1, 1, 0): 1, Z(1, 2, 1): 1}),
    ([(LINEAR, [1, 1])], {Z(1, 1, 0): 1, Z(1, 2, 0): 1}),
], ids=["elliptic", "hyperbolic", "parabolic", "central"])
def test_gl2_table(pairs, expected):
    assert predict_zeta_multiset(datum_from_pairs(pairs)) == Counter(expected)


def test_rendered_gl2_cases():
    assert render_prediction(datum_from_pairs([(LINEAR, [1, 1])])) == "ζ_F(s)ζ_F(2s)"
    assert render_prediction(datum_from_pairs([(LINEAR, [2])])) == "ζ_F(s)ζ_F(2s-1)"


@pytest.mark.parametrize("m", range(1, 7))
def test_regular_chain(m):
    datum = datum_from_pairs([(QUADRATIC, [m])])
    assert predict_zeta_multiset(datum) == Counter({Z(2, k, k - 1): 1 for k in range(1, m + 1)})


def test_conjugation_examples():
    assert verify_conjugation_symmetry(Partition((1,)))
    assert verify_conjugation_symmetry(Partition((2,)))
    assert verify_conjugation_symmetry(Partition((1, 1)))


def test_conjugation_exhaustive_up_to_12():
    assert all(verify_conjugation_symmetry(lam) for n in range(1, 13) for lam in partitions_of(n))


def test_datum_validation_and_json():
    with pytest.raises(ValueError):
        datum_from_pairs([(LINEAR, [1]), (LINEAR, [2])])
    with pytest.raises(ValueError):
        datum_from_pairs([((1, 2), [1])])
    datum = datum_from_pairs([(QUADRATIC, [2, 1]), (LINEAR, [1])])
    assert datum.n == 7
    assert ClassDatum.from_json(datum.to_json()) == datum
    assert datum.to_json()["components"][0] == {"poly": ["-5", "0", "1"], "partition": [2, 1]}
