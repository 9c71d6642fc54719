"""Pieri coefficients of the translation functors, the box maps S_x / S^x,
the map psi and the zero/pole bookkeeping for those coefficients."""

from __future__ import annotations

from dataclasses import dataclass

from .diagrams import Bipartition, Box, Partition, Rectangle, connected_components, from_boxes, theta
from .exactfield import K, ONE, P0, RatKP, SpecialPoint, as_rat, valuation
from .spectrum import EquivClass, equivalence_class


class DegenerateCoefficient(ZeroDivisionError):
    pass


def c_lambda(p: Partition, j: int, r: int, a, k: RatKP = K) -> RatKP:
    """lambda_r - j - k (lambda'_j - r) + a."""
    return k * (r - p.conj_part(j)) + (p.part(r) - j) + as_rat(a)


def c_alpha(alpha: Bipartition, j: int, r: int, a, k: RatKP = K) -> RatKP:
    """lambda_r + j + k (mu'_j + r) + a."""
    return k * (alpha.mu.conj_part(j) + r) + (alpha.lam.part(r) + j) + as_rat(a)


# -- U and V ----------------------------------------------------------------


@dataclass(frozen=True)
class CoeffFactors:
    u1: RatKP
    u2: RatKP
    u3: RatKP
    product: RatKP


def _ratio(num: list[RatKP], den: list[RatKP]) -> RatKP:
    out = ONE
    for f in den:
        if f.is_zero():
            raise DegenerateCoefficient("degenerate coefficient")
    for f in num:
        out = out * f
    for f in den:
        out = out / f
    return out


def _u1_factors(x, alpha: Bipartition, k: RatKP):
    i, j = x
    mu = alpha.mu
    num, den = [], []
    for r in range(i + 1, len(mu) + 1):
        num += [c_lambda(mu, j, r, ONE + k, k), c_lambda(mu, j, r, -k, k)]
        den += [c_lambda(mu, j, r, 1, k), c_lambda(mu, j, r, 0, k)]
    return num, den


def _u2_factors(x, alpha: Bipartition, k: RatKP):
    _, j = x
    num, den = [], []
    kp = k * P0
    for r in range(1, len(alpha.lam) + 1):
        num += [c_alpha(alpha, j, r, -ONE - kp - 2 * k, k), c_alpha(alpha, j, r, -kp, k)]
        den += [c_alpha(alpha, j, r, -ONE - kp - k, k), c_alpha(alpha, j, r, -kp - k, k)]
    return num, den


def _u3_factors(x, alpha: Bipartition, k: RatKP):
    _, j = x
    L = len(alpha.lam)
    lm = len(alpha.mu)
    mj = alpha.mu.conj_part(j)
    num = [k * (L + mj - 1) - k * P0 + (j - 1), k * (mj - lm) + j]
    den = [k * (L + mj) - k * P0 + j, k * (mj - lm - 1) + (j - 1)]
    return num, den


def u_factors(x, alpha: Bipartition, k: RatKP = K) -> tuple[list[RatKP], list[RatKP]]:
    """All linear factors of U(x, alpha) before cancellation."""
    num, den = [], []
    for part in (_u1_factors, _u2_factors, _u3_factors):
        a, b = part(x, alpha, k)
        num += a
        den += b
    return num, den


def U1(x, alpha: Bipartition, k: RatKP = K) -> RatKP:
    return _ratio(*_u1_factors(x, alpha, k))


def U_coeff(x, alpha: Bipartition, k: RatKP = K) -> CoeffFactors:
    u1 = _ratio(*_u1_factors(x, alpha, k))
    u2 = _ratio(*_u2_factors(x, alpha, k))
    u3 = _ratio(*_u3_factors(x, alpha, k))
    return CoeffFactors(u1, u2, u3, u1 * u2 * u3)


def U(x, alpha: Bipartition, k: RatKP = K) -> RatKP:
    return U_coeff(x, alpha, k).product


def V_verbatim(x, alpha: Bipartition, k: RatKP = K) -> RatKP:
    """The product over rows i+1..l(mu) of mu, identical to U1.

    Kept for comparison only: it has a vanishing denominator for ordinary
    inputs such as x = (1,1), alpha = (∅, (1,1)).
    """
    return U1(x, alpha, k)


def v_factors(x, alpha: Bipartition, k: RatKP = K) -> tuple[list[RatKP], list[RatKP]]:
    i, j = x
    grown = alpha.lam.add_box(x)
    if grown is None:
        raise ValueError(f"box {tuple(x)} cannot be added to {alpha.lam}")
    num, den = [], []
    for r in range(1, i):
        num += [c_lambda(grown, j, r, ONE + k, k), c_lambda(grown, j, r, -k, k)]
        den += [c_lambda(grown, j, r, 1, k), c_lambda(grown, j, r, 0, k)]
    return num, den


def V_coeff(x, alpha: Bipartition, k: RatKP = K) -> RatKP:
    """Coefficient of P_(lambda+x, mu) in the translation of P_(lambda, mu).

    The product runs over the rows r < i of the column of x = (i, j), with
    the contents read off lambda + x.  It does not involve p0.
    """
    return _ratio(*v_factors(x, alpha, k))


# -- box maps ----------------------------------------------------------------


def _check_box(x, rect: Rectangle) -> Box:
    x = Box(*x)
    if x not in rect:
        raise ValueError(f"box {tuple(x)} outside {rect.n}x{rect.m} rectangle")
    return x


def S_lower(x, alpha: Bipartition, rect: Rectangle) -> frozenset[Bipartition]:
    """{(lambda + x, mu), (lambda, mu - theta(x))}, keeping valid diagrams."""
    x = _check_box(x, rect)
    tx = theta(x, rect)
    out = set()
    grown = alpha.lam.add_box(x)
    if grown is not None:
        out.add(Bipartition(grown, alpha.mu))
    shrunk = alpha.mu.remove_box(tx)
    if shrunk is not None:
        out.add(Bipartition(alpha.lam, shrunk))
    return frozenset(out)


def S_upper(x, alpha: Bipartition, rect: Rectangle) -> frozenset[Bipartition]:
    """{(lambda - x, mu), (lambda, mu + theta(x))}, keeping valid diagrams."""
    x = _check_box(x, rect)
    tx = theta(x, rect)
    out = set()
    shrunk = alpha.lam.remove_box(x)
    if shrunk is not None:
        out.add(Bipartition(shrunk, alpha.mu))
    grown = alpha.mu.add_box(tx)
    if grown is not None:
        out.add(Bipartition(alpha.lam, grown))
    return frozenset(out)


class ShiftError(RuntimeError):
    pass


def class_shift(E: EquivClass, x, direction: str) -> EquivClass:
    if direction not in ("up", "down"):
        raise ValueError("direction must be 'up' or 'down'")
    smap = S_upper if direction == "up" else S_lower
    images = [b for a in E.members for b in sorted(smap(x, a, E.rect))]
    if not images:
        raise ShiftError("no shifted class")
    F = equivalence_class(images[0], E.pt)
    if any(b not in F for b in images):
        raise ShiftError("shifted members fall in different classes")
    return F


def psi(alpha: Bipartition, x, nu, rect: Rectangle) -> Bipartition:
    """Move alpha one step towards the class obtained by removing x.

    (lambda - x, mu) if nu lies in lambda, (lambda, mu + theta(x)) if nu
    misses lambda.
    """
    x = _check_box(x, rect)
    nu = frozenset(Box(*y) for y in nu)
    if x not in nu:
        raise ValueError("x must lie in nu")
    lam = alpha.lam.boxes()
    if nu <= lam:
        shrunk = alpha.lam.remove_box(x)
        if shrunk is None:
            raise ValueError(f"removing {tuple(x)} from {alpha.lam} is not a diagram")
        return Bipartition(shrunk, alpha.mu)
    if not (nu & lam):
        grown = alpha.mu.add_box(theta(x, rect))
        if grown is None:
            raise ValueError(f"adding {tuple(theta(x, rect))} to {alpha.mu} is not a diagram")
        return Bipartition(alpha.lam, grown)
    raise ValueError("nu must either lie in lambda or miss it")


# -- zero/pole bookkeeping ----------------------------------------------------


@dataclass(frozen=True)
class OrderReport:
    numerator_zero_order: int
    denominator_zero_order: int
    triggered_conditions: tuple[str, ...]

    @property
    def net(self) -> int:
        return self.numerator_zero_order - self.denominator_zero_order


def predicted_zero_orders(x, alpha: Bipartition, rect: Rectangle) -> OrderReport:
    """Predicted zero orders of numerator and denominator of U(theta(x), alpha).

    x = (i, j) and theta(x) must be removable from mu.  Parts lambda_r are
    only matched when row r actually exists (r between 1 and l(lambda)).
    """
    x = _check_box(x, rect)
    if alpha.mu.remove_box(theta(x, rect)) is None:
        raise ValueError("theta(x) is not removable from mu")
    i, j = x
    lam = alpha.lam
    L = len(lam)

    def row(r):
        return lam.part(r) if 1 <= r <= L else None

    tags = []
    if j >= 2 and row(i - 1) == j - 1:
        tags.append("num:lambda_{i-1}=j-1")
    if row(i + 1) == j:
        tags.append("num:lambda_{i+1}=j")
    num_tags = len(tags)
    if row(i) == j:
        tags.append("den:lambda_i=j")
    if j >= 2 and row(i) == j - 1:
        tags.append("den:lambda_i=j-1")
    if j == 1 and i == L + 1:
        tags.append("den:j=1,i=l(lambda)+1")
    return OrderReport(int(num_tags > 0), int(len(tags) > num_tags), tuple(tags))


@dataclass(frozen=True)
class FactorCount:
    numerator: int
    denominator: int
    identically_zero: bool


def count_vanishing_factors(x, alpha: Bipartition, pt: SpecialPoint, k: RatKP = K) -> FactorCount:
    """Count the linear factors of U(theta(x), alpha) vanishing at the point."""
    rect = Rectangle(pt.n, pt.m)
    num, den = u_factors(theta(x, rect), alpha, k)
    zero = any(f.is_zero() for f in num)
    cn = sum(1 for f in num if not f.is_zero() and valuation(f, pt, k) > 0)
    cd = sum(1 for f in den if not f.is_zero() and valuation(f, pt, k) > 0)
    return FactorCount(cn, cd, zero)


# -- d coefficients -----------------------------------------------------------


@dataclass(frozen=True)
class DCoeff:
    value: RatKP
    case_tag: int
    expected_valuation: int
    image: Bipartition


def component_of(E: EquivClass, x) -> tuple[int, frozenset]:
    x = Box(*x)
    for t, (nu, _) in enumerate(E.components):
        if x in nu:
            return t, nu
    raise ValueError(f"box {tuple(x)} lies in no component of the class")


def admissible_boxes(E: EquivClass) -> list[Box]:
    """Boxes x in some component with lambda_M - x a diagram."""
    lam_max = E.alpha_max.lam
    out = []
    for nu, _ in E.components:
        for x in sorted(nu):
            if lam_max.remove_box(x) is not None:
                out.append(x)
    return out


def d_case(nu: frozenset, x) -> int:
    rest = nu - {Box(*x)}
    if not rest:
        return 3
    return 1 if len(connected_components(rest)) == 1 else 2


def d_coeff(x, alpha: Bipartition, E: EquivClass, k: RatKP = K) -> DCoeff:
    rect = E.rect
    x = Box(*x)
    _, nu = component_of(E, x)
    if E.alpha_max.lam.remove_box(x) is None:
        raise ValueError("lambda_M minus x is not a diagram")
    image = psi(alpha, x, nu, rect)
    inside = nu <= alpha.lam.boxes()
    if inside:
        value = V_coeff(x, image, k)
    else:
        value = U(theta(x, rect), image, k)
    case = d_case(nu, x)
    if case == 1:
        expected = 0
    elif case == 2:
        expected = 0 if inside else 1
    else:
        expected = 0 if inside else -1
    return DCoeff(value, case, expected, image)


__all__ = [
    "DegenerateCoefficient",
    "c_lambda",
    "c_alpha",
    "CoeffFactors",
    "u_factors",
    "U1",
    "U_coeff",
    "U",
    "V_verbatim",
    "v_factors",
    "V_coeff",
    "S_lower",
    "S_upper",
    "ShiftError",
    "class_shift",
    "psi",
    "OrderReport",
    "predicted_zero_orders",
    "FactorCount",
    "count_vanishing_factors",
    "DCoeff",
    "component_of",
    "admissible_boxes",
    "d_case",
    "d_coeff",
]
