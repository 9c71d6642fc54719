"""Contents, the eigenvalues b_r, the E- and R-equivalence relations and
equivalence-class resolution at a special point."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .diagrams import (
    Bipartition,
    Box,
    Rectangle,
    connected_components,
    from_boxes,
    theta_set,
)
from .exactfield import K, ONE, P0, ZERO, RatKP, SpecialPoint, as_rat

# the second argument of c(x, a) used for boxes of mu
MU_SHIFT = ONE + K - K * P0


def mu_shift(k: RatKP = K) -> RatKP:
    return ONE + k - k * P0


def content(x, shift=0, k: RatKP = K) -> RatKP:
    """c(x, a) = (j - 1) + k (i - 1) + a."""
    i, j = x
    return k * (i - 1) + (j - 1) + as_rat(shift)


def b_r(alpha: Bipartition, r: int, k: RatKP = K) -> RatKP:
    if r < 1:
        raise ValueError("r must be >= 1")
    total = ZERO
    for x in alpha.lam.boxes():
        total = total + content(x, 0, k) ** (r - 1)
    shift = mu_shift(k)
    for y in alpha.mu.boxes():
        c = content(y, shift, k) ** (r - 1)
        total = total + c if r % 2 == 0 else total - c
    return total


def rect_of(pt: SpecialPoint) -> Rectangle:
    return Rectangle(pt.n, pt.m)


# -- oracle -----------------------------------------------------------------
#
# At the point, k p0 = k n + m, so every content is linear in k and is stored
# as the integer pair (constant, k-coefficient).  With p0 left symbolic a
# third coordinate carries the coefficient of k p0.


def _lam_elems(lam_boxes, symbolic: bool):
    if symbolic:
        return [(j - 1, i - 1, 0) for i, j in lam_boxes]
    return [(j - 1, i - 1) for i, j in lam_boxes]


def _mu_elems(mu_boxes, pt: SpecialPoint | None):
    # -c(y, 1 + k - k p0) with y = (i, j)
    if pt is None:
        return [(-j, -i, 1) for i, j in mu_boxes]
    return [(pt.m - j, pt.n - i) for i, j in mu_boxes]


def _sides(a: Bipartition, b: Bipartition, pt: SpecialPoint | None):
    sym = pt is None
    left = _lam_elems(a.lam.boxes(), sym) + _mu_elems(b.mu.boxes(), pt)
    right = _lam_elems(b.lam.boxes(), sym) + _mu_elems(a.mu.boxes(), pt)
    return left, right


def _power_sum(elems, e: int) -> dict:
    """Sum over elems of (c0 + c1 k + c2 t)^e as {(deg_k, deg_t): int}."""
    out: Counter = Counter()
    for el in elems:
        lin = {}
        for mono, c in zip(((0, 0), (1, 0), (0, 1)), el):
            if c:
                lin[mono] = c
        term = {(0, 0): 1}
        for _ in range(e):
            nxt: Counter = Counter()
            for (a1, b1), c in term.items():
                for (a2, b2), d in lin.items():
                    nxt[(a1 + a2, b1 + b2)] += c * d
            term = nxt
        out.update(term)
    return {mono: c for mono, c in out.items() if c}


def is_E_equivalent_oracle(a: Bipartition, b: Bipartition, pt: SpecialPoint | None, bound: int = 0) -> bool:
    """Multiset comparison of the content sequences whose power sums are b_r.

    ``pt=None`` keeps k p0 symbolic.  ``bound`` > 0 also compares the power
    sums of exponents 0..bound-1 and raises if they contradict the multiset
    verdict (they determine the multiset once bound exceeds its size).
    """
    left, right = _sides(a, b, pt)
    verdict = Counter(left) == Counter(right)
    if bound > 0:
        sums_agree = all(_power_sum(left, e) == _power_sum(right, e) for e in range(bound))
        decisive = bound > max(len(left), len(right))
        if (verdict and not sums_agree) or (decisive and sums_agree != verdict):
            raise AssertionError("oracle cross-check mismatch")
    return verdict


def is_E_equivalent_geometric(a: Bipartition, b: Bipartition, pt: SpecialPoint) -> bool:
    rect = rect_of(pt)
    P = rect.boxes()
    la, ma = a.boxes()
    lb, mb = b.boxes()
    if la - P != lb - P or ma - P != mb - P:
        return False
    if not (la - lb) <= P or not (lb - la) <= P:
        return False
    return theta_set(la - lb, rect) == ma - mb and theta_set(lb - la, rect) == mb - ma


def is_R_equivalent(a: Bipartition, b: Bipartition) -> bool:
    la, ma = a.boxes()
    lb, mb = b.boxes()
    return la & ma == lb & mb and la | ma == lb | mb


# -- class resolution -------------------------------------------------------


class ClassStructureError(RuntimeError):
    pass


@dataclass(frozen=True)
class EquivClass:
    """A resolved equivalence class.

    ``components`` lists the togglable pairs (nu_i, theta(nu_i)) in canonical
    order.  ``members`` is sorted by total box count, then by the indicator
    tuple, which refines inclusion.  ``forced`` holds pairs that every member
    must contain because of boxes outside the rectangle.
    """

    pt: SpecialPoint
    outside: tuple[frozenset, frozenset]
    alpha_min: Bipartition
    alpha_max: Bipartition
    components: tuple[tuple[frozenset, frozenset], ...]
    members: tuple[Bipartition, ...]
    indicators: tuple[tuple[int, ...], ...]
    forced: tuple[tuple[frozenset, frozenset], ...] = field(default=())

    @property
    def rect(self) -> Rectangle:
        return rect_of(self.pt)

    @property
    def r(self) -> int:
        return len(self.components)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a) -> bool:
        return a in self._index

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {a: t for t, a in enumerate(self.members)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def index(self, a: Bipartition) -> int:
        return self._index[a]

    def indicator(self, a: Bipartition) -> tuple[int, ...]:
        return self.indicators[self._index[a]]

    def to_json(self) -> dict:
        def bl(s):
            return [list(x) for x in sorted(s)]

        return {
            "rect": [self.pt.n, self.pt.m],
            "alpha_min": self.alpha_min.to_json(),
            "alpha_max": self.alpha_max.to_json(),
            "components": [{"nu": bl(nu), "tau": bl(tau)} for nu, tau in self.components],
            "members": [a.to_json() for a in self.members],
        }


def _split(a: Bipartition, rect: Rectangle):
    P = rect.boxes()
    lam, mu = a.boxes()
    return lam & P, mu & P, lam - P, mu - P


def equivalence_class(a: Bipartition, pt: SpecialPoint) -> EquivClass:
    rect = rect_of(pt)
    P = rect.boxes()
    lp, mp, lo, mo = _split(a, rect)
    tm = theta_set(mp, rect)
    on = lp & tm
    off = P - (lp | tm)
    lmin = lp - on
    mmin = mp - theta_set(on, rect)
    comps = connected_components(on | off)
    pairs = [(nu, theta_set(nu, rect)) for nu in comps]

    cands = []
    for sub in itertools.product((0, 1), repeat=len(pairs)):
        lam = set(lmin) | lo
        mu = set(mmin) | mo
        for bit, (nu, tau) in zip(sub, pairs):
            if bit:
                lam |= nu
                mu |= tau
        b = Bipartition.from_box_sets(lam, mu)
        if b is not None:
            cands.append((sub, b))
    if a not in (b for _, b in cands):
        raise ClassStructureError("class structure violated")

    # pairs needed by every member are folded into the minimum
    always = [all(sub[t] for sub, _ in cands) for t in range(len(pairs))]
    free = [t for t in range(len(pairs)) if not always[t]]
    if len(cands) != 2 ** len(free):
        raise ClassStructureError("class structure violated")
    for sub, _ in cands:
        if any(always[t] and not sub[t] for t in range(len(pairs))):
            raise ClassStructureError("class structure violated")

    entries = []
    for sub, b in cands:
        ind = tuple(sub[t] for t in free)
        entries.append((b.size, ind, b))
    entries.sort(key=lambda e: (e[0], e[1]))
    members = tuple(b for _, _, b in entries)
    indicators = tuple(ind for _, ind, _ in entries)
    return EquivClass(
        pt=pt,
        outside=(frozenset(lo), frozenset(mo)),
        alpha_min=members[0],
        alpha_max=members[-1],
        components=tuple(pairs[t] for t in free),
        members=members,
        indicators=indicators,
        forced=tuple(pairs[t] for t in range(len(pairs)) if always[t]),
    )


def pole_order_prediction(a: Bipartition, pt: SpecialPoint) -> int:
    """Number of togglable pairs switched on in ``a``.

    Inside the rectangle this is the number of connected components of
    lambda and theta(mu) intersected.
    """
    E = equivalence_class(a, pt)
    return sum(E.indicator(a))


def intersection_components(a: Bipartition, pt: SpecialPoint) -> int:
    rect = rect_of(pt)
    lp, mp, _, _ = _split(a, rect)
    return len(connected_components(lp & theta_set(mp, rect)))


__all__ = [
    "MU_SHIFT",
    "mu_shift",
    "content",
    "b_r",
    "rect_of",
    "is_E_equivalent_oracle",
    "is_E_equivalent_geometric",
    "is_R_equivalent",
    "EquivClass",
    "ClassStructureError",
    "equivalence_class",
    "pole_order_prediction",
    "intersection_components",
]
