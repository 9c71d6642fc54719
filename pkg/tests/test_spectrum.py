import itertools

import pytest

from jacklaurent.diagrams import Bipartition, Box, bipartitions_in_rectangle
from jacklaurent.exactfield import K, P0, ZERO, SpecialPoint, eval_p0
from jacklaurent.spectrum import (
    MU_SHIFT,
    b_r,
    content,
    equivalence_class,
    intersection_components,
    is_E_equivalent_geometric,
    is_E_equivalent_oracle,
    is_R_equivalent,
    pole_order_prediction,
)

B = Bipartition.of
PT11 = SpecialPoint(1, 1)
PT22 = SpecialPoint(2, 2)


def test_content():
    assert content(Box(2, 3), 0) == 2 + K
    assert content(Box(1, 1), MU_SHIFT) == 1 + K - K * P0
    assert content(Box(1, 1), 0) == ZERO


def test_b_r():
    assert b_r(B((1,), (1,)), 1) == ZERO
    assert b_r(B((2,), (1,)), 2) == 2 + K - K * P0
    for r in range(1, 5):
        assert b_r(B(), r) == ZERO


def test_oracle_examples():
    assert is_E_equivalent_oracle(B(), B((1,), (1,)), PT11)
    assert is_E_equivalent_oracle(B((2, 1), (1,)), B((2, 1), (1,)), PT22)
    assert not is_E_equivalent_oracle(B((1,), ()), B((), (1,)), PT11)


def test_geometric_examples():
    assert is_E_equivalent_geometric(B((1,), (1,)), B(), PT11)
    assert is_E_equivalent_geometric(B((1,), (1,)), B((2,), (1, 1)), PT22)
    assert not is_E_equivalent_geometric(B((1,), ()), B((), (1,)), PT11)


def test_r_equivalence():
    assert is_R_equivalent(B((1,), ()), B((), (1,)))
    assert is_R_equivalent(B((2,), (1,)), B((1,), (2,)))
    assert not is_R_equivalent(B((2,), ()), B((1, 1), ()))


def test_oracle_matches_eigenvalues_at_the_point():
    # E-equivalent bipartitions share every b_r once p0 is specialised
    pt = SpecialPoint(2, 1)
    v = pt.p0_value()
    fam = bipartitions_in_rectangle(2, 1)
    for a, b in itertools.combinations(fam, 2):
        if is_E_equivalent_oracle(a, b, pt):
            for r in range(1, 6):
                assert eval_p0(b_r(a, r) - b_r(b, r), v) == ZERO
        else:
            assert any(eval_p0(b_r(a, r) - b_r(b, r), v) != ZERO for r in range(1, 2 * 2 * 1 + 2))


def test_power_sum_cross_check_agrees():
    fam = bipartitions_in_rectangle(2, 2)
    for a, b in itertools.combinations(fam[:40], 2):
        assert is_E_equivalent_oracle(a, b, PT22) == is_E_equivalent_oracle(a, b, PT22, bound=20)


def test_class_examples():
    E = equivalence_class(B((1,), (1,)), PT11)
    assert set(E.members) == {B(), B((1,), (1,))} and E.r == 1
    E = equivalence_class(B((1,), (1,)), PT22)
    assert E.r == 2 and E.alpha_min == B((1,), (1,))
    assert set(E.members) == {B((1,), (1,)), B((2,), (1, 1)), B((1, 1), (2,)), B((2, 1), (2, 1))}
    E = equivalence_class(B((2, 1), (1,)), PT22)
    assert E.members == (B((2, 1), (1,)),) and E.r == 0


def test_class_with_outside_boxes_forces_pairs():
    # the outside box (1,2) forces (1,1) into lambda, so the pair at (1,1) is frozen
    E = equivalence_class(B((2,), (1,)), PT11)
    assert E.members == (B((2,), (1,)),)
    assert len(E.forced) == 1 and E.r == 0


def test_members_sorted_and_indexed():
    E = equivalence_class(B(), SpecialPoint(3, 2))
    sizes = [a.size for a in E.members]
    assert sizes == sorted(sizes)
    for a in E.members:
        assert E.members[E.index(a)] == a
    with pytest.raises(KeyError):
        E.index(B((9,), ()))


def test_pole_order_prediction():
    assert pole_order_prediction(B((1,), (1,)), PT11) == 1
    assert pole_order_prediction(B(), PT22) == 0
    assert pole_order_prediction(B((2, 1), (2, 1)), PT22) == 2
    assert intersection_components(B((2, 1), (2, 1)), PT22) == 2
