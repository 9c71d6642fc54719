import pytest

from jacklaurent.diagrams import Bipartition, Box, Partition, Rectangle, bipartitions_in_rectangle, theta
from jacklaurent.exactfield import K, ONE, P0, SpecialPoint, parse, valuation
from jacklaurent.pieri import (
    DegenerateCoefficient,
    S_lower,
    S_upper,
    ShiftError,
    U,
    U_coeff,
    V_coeff,
    V_verbatim,
    admissible_boxes,
    c_alpha,
    c_lambda,
    class_shift,
    count_vanishing_factors,
    d_coeff,
    predicted_zero_orders,
    psi,
)
from jacklaurent.spectrum import equivalence_class
from jacklaurent.suites import classes_of

B = Bipartition.of
R11 = Rectangle(1, 1)
R22 = Rectangle(2, 2)
PT11 = SpecialPoint(1, 1)


def test_c_lambda():
    assert c_lambda(Partition((1,)), 1, 1, 0) == 0
    for j, r in [(1, 1), (2, 3)]:
        assert c_lambda(Partition(()), j, r, 5) == -j + K * r + 5
    assert c_lambda(Partition((2, 1)), 1, 2, 1) == ONE


def test_c_alpha():
    assert c_alpha(B((), (1,)), 1, 1, 0) == 1 + 2 * K
    assert c_alpha(B((1,), ()), 1, 1, -K * P0) == 2 + K - K * P0
    assert c_alpha(B(), 2, 3, 0) == 2 + 3 * K


def test_u_empty_products():
    f = U_coeff(Box(1, 1), B((), (1,)))
    assert f.u1 == ONE and f.u2 == ONE and f.product == f.u3
    assert f.product == parse("(-1*p0)/(k*p0 - k - 1)")
    assert valuation(f.product, PT11) == -1


def test_u_simple_pole_when_row_is_full():
    a = B((1,), (1,))
    f = U_coeff(theta(Box(1, 1), R11), a)
    assert valuation(f.product, PT11) == -1
    assert predicted_zero_orders(Box(1, 1), a, R11).denominator_zero_order == 1


def test_v_coefficient():
    assert V_coeff(Box(1, 1), B()) == ONE
    assert V_coeff(Box(2, 1), B((1,), ())) == parse("(-2)/(k - 1)")
    for a in bipartitions_in_rectangle(2, 2):
        for x in a.lam.addable():
            assert V_coeff(x, a).is_p0_free()


def test_verbatim_v_is_degenerate():
    with pytest.raises(DegenerateCoefficient, match="degenerate coefficient"):
        V_verbatim(Box(1, 1), B((), (1, 1)))


def test_box_maps():
    assert S_lower(Box(1, 1), B((), (1,)), R11) == {B((1,), (1,)), B()}
    assert S_lower(Box(1, 1), B((1,), (1,)), R11) == {B((1,), ())}
    assert S_lower(Box(2, 1), B(), R22) == frozenset()
    assert S_upper(Box(1, 1), B((1,), (1,)), R11) == {B((), (1,))}
    assert S_upper(Box(1, 1), B(), R11) == {B((), (1,))}
    assert S_upper(Box(1, 1), B((1,), ()), R11) == {B(), B((1,), (1,))}


def test_class_shift():
    E = equivalence_class(B((1,), (1,)), PT11)
    up = class_shift(E, Box(1, 1), "up")
    assert up.members == (B((), (1,)),)
    down = class_shift(up, Box(1, 1), "down")
    assert set(down.members) == set(E.members)
    lone = equivalence_class(B((2, 1), (1,)), SpecialPoint(2, 2))
    with pytest.raises(ShiftError, match="no shifted class"):
        class_shift(lone, Box(1, 1), "down")


def test_psi():
    nu = {Box(1, 1)}
    assert psi(B((1,), (1,)), Box(1, 1), nu, R11) == B((), (1,))
    assert psi(B(), Box(1, 1), nu, R11) == B((), (1,))
    assert psi(B((2,), (1, 1)), Box(2, 1), {Box(2, 1)}, R22) == B((2,), (2, 1))
    with pytest.raises(ValueError):
        psi(B(), Box(1, 1), {Box(2, 2)}, R22)


def test_predicted_orders_examples():
    r = predicted_zero_orders(Box(1, 1), B((), (1,)), R11)
    assert (r.numerator_zero_order, r.denominator_zero_order) == (0, 1)
    assert r.triggered_conditions == ("den:j=1,i=l(lambda)+1",)
    r = predicted_zero_orders(Box(1, 1), B((1,), (1,)), R11)
    assert (r.numerator_zero_order, r.denominator_zero_order) == (0, 1)
    r = predicted_zero_orders(Box(2, 2), B((), (1,)), R22)
    assert (r.numerator_zero_order, r.denominator_zero_order) == (0, 0)
    with pytest.raises(ValueError):
        predicted_zero_orders(Box(1, 1), B(), R11)


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2)])
def test_predicted_orders_match_factor_count(n, m):
    rect = Rectangle(n, m)
    pt = SpecialPoint(n, m)
    for a in bipartitions_in_rectangle(n, m):
        for x in rect.boxes():
            if a.mu.remove_box(theta(x, rect)) is None:
                continue
            r = predicted_zero_orders(x, a, rect)
            c = count_vanishing_factors(x, a, pt)
            assert (r.numerator_zero_order, r.denominator_zero_order) == (c.numerator, c.denominator)
            assert not c.identically_zero


@pytest.mark.parametrize("n,m", [(1, 1), (2, 2), (3, 2), (2, 3)])
def test_d_coefficient_valuations(n, m):
    seen = 0
    for E in classes_of(n, m):
        for x in admissible_boxes(E):
            for a in E.members:
                d = d_coeff(x, a, E)
                assert valuation(d.value, E.pt) == d.expected_valuation
                seen += 1
    assert seen > 0


def test_d_coefficient_unit_case():
    E = equivalence_class(B((1,), (1,)), PT11)
    top = d_coeff(Box(1, 1), B((1,), (1,)), E)
    bottom = d_coeff(Box(1, 1), B(), E)
    assert (top.case_tag, top.expected_valuation) == (3, 0)
    assert (bottom.case_tag, bottom.expected_valuation) == (3, -1)
    assert bottom.value == U(Box(1, 1), B((), (1,)))
