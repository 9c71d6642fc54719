import pytest

from jacklaurent.diagrams import Bipartition
from jacklaurent.exactfield import ONE, SpecialPoint, parse, probe_mode, valuation
from jacklaurent.regbasis import (
    ALTERNATE,
    CANONICAL,
    MemoStore,
    b_matrix,
    b_matrix_regular,
    box_order_diagnostic,
    inverse_transition,
    lambda_components,
    p_pole_order,
    q_column,
    transition_matrix,
    verify_pole_orders,
)
from jacklaurent.spectrum import equivalence_class, pole_order_prediction
from jacklaurent.suites import classes_of

B = Bipartition.of
PT11 = SpecialPoint(1, 1)
PT22 = SpecialPoint(2, 2)


def test_minimum_gives_unit_column():
    E = equivalence_class(B((1,), (1,)), PT22)
    assert q_column(E.alpha_min, PT22) == {E.alpha_min: ONE}


def test_unit_square_column():
    col = q_column(B((1,), (1,)), PT11)
    assert col[B((1,), (1,))] == ONE
    entry = col[B()]
    assert entry == parse("(-1*p0)/(k*p0 - k - 1)")
    assert valuation(entry, PT11) == -1


def test_top_of_two_component_class():
    top = B((2, 1), (2, 1))
    col = q_column(top, PT22)
    assert len(col) == 4
    assert valuation(col[B((1,), (1,))], PT22) == -2


def test_transition_shapes():
    A = transition_matrix(equivalence_class(B((2, 1), (1,)), PT22))
    assert A.entries == ((ONE,),)
    A = transition_matrix(equivalence_class(B((1,), (1,)), PT11))
    assert len(A.entries) == 2 and A.entries[1][0].is_zero()
    A = transition_matrix(equivalence_class(B((1,), (1,)), PT22))
    n = len(A.entries)
    assert n == 4
    assert all(A.entries[i][i] == ONE for i in range(n))
    assert all(A.entries[i][j].is_zero() for i in range(n) for j in range(i))


def test_pole_orders_of_two_component_class():
    E = equivalence_class(B((1,), (1,)), PT22)
    A = transition_matrix(E)
    assert -valuation(A.entry(E.alpha_min, E.alpha_max), PT22) == 2
    assert lambda_components(E.alpha_max, E.alpha_min) == 2
    assert verify_pole_orders(A).ok
    Ai = inverse_transition(A)
    assert p_pole_order(Ai, E.alpha_min) == 0
    assert p_pole_order(Ai, E.alpha_max) == 2
    assert p_pole_order(inverse_transition(transition_matrix(equivalence_class(B(), PT11))), B((1,), (1,))) == 1


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_pole_law_and_regularity(n, m):
    for E in classes_of(n, m):
        A = transition_matrix(E)
        assert verify_pole_orders(A).ok
        Ai = inverse_transition(A)
        for a in E.members:
            assert p_pole_order(Ai, a) == pole_order_prediction(a, E.pt)
        for s in range(1, E.r + 2):
            assert b_matrix_regular(A, Ai, s)


def test_b_matrices_of_unit_square():
    E = equivalence_class(B((1,), (1,)), PT11)
    A = transition_matrix(E)
    Ai = inverse_transition(A)
    assert all(x.is_zero() for row in b_matrix(A, Ai, 1) for x in row)
    b2 = b_matrix(A, Ai, 2)
    assert b2[0][1] == parse("-p0") and b2[0][0].is_zero() and b2[1][1].is_zero()


def test_both_box_rules_give_valid_matrices():
    # the two rules may pick different regular bases; both must obey the pole law
    differ = 0
    for E in classes_of(2, 2):
        memo = MemoStore()
        diag = box_order_diagnostic(E, memo=memo)
        differ += diag.differing_entries
        for rule in (CANONICAL, ALTERNATE):
            A = transition_matrix(E, rule=rule, memo=memo)
            assert verify_pole_orders(A).ok
    assert differ == 2


def test_memo_is_idempotent():
    memo = MemoStore()
    first = q_column(B((2, 1), (2, 1)), PT22, memo=memo)
    size = len(memo)
    again = q_column(B((2, 1), (2, 1)), PT22, memo=memo)
    assert first is again and len(memo) == size
    assert memo.put(("x",), 1) == 1 and memo.put(("x",), 2) == 1


def test_probe_mode_agrees_on_pole_orders():
    mode = probe_mode(3)
    E = equivalence_class(B((1,), (1,)), PT22)
    A = transition_matrix(E, mode.k, memo=MemoStore())
    assert verify_pole_orders(A).ok
