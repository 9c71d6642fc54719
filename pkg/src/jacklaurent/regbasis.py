"""Transition matrices from the P-basis to the regular basis of a class."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

from . import _linalg as la
from .diagrams import Bipartition, Box, connected_components, theta
from .exactfield import K, ONE, ZERO, RatKP, SpecialPoint, valuation
from .pieri import U, V_coeff
from .spectrum import EquivClass, b_r, equivalence_class


class RecursionFailure(RuntimeError):
    pass


@lru_cache(maxsize=None)
def cached_class(alpha: Bipartition, pt: SpecialPoint) -> EquivClass:
    return equivalence_class(alpha, pt)


class MemoStore:
    """Columns keyed by (point, member, k, box rule); inserts are idempotent."""

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self._data.get(key)

    def put(self, key, value):
        with self._lock:
            self._data.setdefault(key, value)
        return self._data[key]

    def clear(self):
        with self._lock:
            self._data.clear()

    def __len__(self):
        return len(self._data)


DEFAULT_MEMO = MemoStore()

CANONICAL = "canonical"
ALTERNATE = "alternate"


def choose_box(alpha: Bipartition, E: EquivClass, rule: str = CANONICAL) -> tuple[Box, frozenset] | None:
    """Pick the box whose removal drives the recursion, or None at the minimum.

    The canonical rule takes the first switched-on component in component
    order and the largest admissible box in it; the alternate rule takes the
    last component and the smallest box.
    """
    ind = E.indicator(alpha)
    on = [t for t, bit in enumerate(ind) if bit]
    if not on:
        return None
    t = on[0] if rule == CANONICAL else on[-1]
    nu = E.components[t][0]
    cands = [
        x
        for x in sorted(nu)
        if alpha.lam.remove_box(x) is not None and E.alpha_max.lam.remove_box(x) is not None
    ]
    if not cands:
        raise RecursionFailure("recursion failure")
    x = cands[-1] if rule == CANONICAL else cands[0]
    return x, nu


def translate(col: dict, x: Box, E: EquivClass, k: RatKP = K) -> dict:
    """Apply the translation functor for x and keep the terms inside E."""
    tx = theta(x, E.rect)
    out: dict = {}
    for gamma, a in col.items():
        grown = gamma.lam.add_box(x)
        if grown is not None:
            b = Bipartition(grown, gamma.mu)
            if b in E:
                out[b] = out.get(b, ZERO) + a * V_coeff(x, gamma, k)
        shrunk = gamma.mu.remove_box(tx)
        if shrunk is not None:
            b = Bipartition(gamma.lam, shrunk)
            if b in E:
                out[b] = out.get(b, ZERO) + a * U(tx, gamma, k)
    return {b: v for b, v in out.items() if not v.is_zero()}


def q_column(
    alpha: Bipartition,
    pt: SpecialPoint,
    k: RatKP = K,
    rule: str = CANONICAL,
    memo: MemoStore | None = None,
    _budget: int | None = None,
) -> dict:
    """Coefficients a_{beta alpha} of Q_alpha in the P-basis."""
    memo = DEFAULT_MEMO if memo is None else memo
    key = (pt, alpha, k, rule)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if _budget is None:
        _budget = alpha.lam.size + 1
    if _budget < 0:
        raise RecursionFailure("recursion failure")
    E = cached_class(alpha, pt)
    pick = choose_box(alpha, E, rule)
    if pick is None:
        return memo.put(key, {alpha: ONE})
    x, _ = pick
    image = Bipartition(alpha.lam.remove_box(x), alpha.mu)
    col = q_column(image, pt, k, rule, memo, _budget - 1)
    raw = translate(col, x, E, k)
    d = raw.get(alpha)
    if d is None:
        raise RecursionFailure(f"translation of {image} misses {alpha}")
    inv = d.inverse()
    return memo.put(key, {b: v * inv for b, v in raw.items()})


@dataclass(frozen=True)
class TransitionMatrix:
    E: EquivClass
    entries: tuple[tuple[RatKP, ...], ...]
    k: RatKP = K

    @property
    def pt(self) -> SpecialPoint:
        return self.E.pt

    @property
    def basis(self) -> tuple[Bipartition, ...]:
        return self.E.members

    def entry(self, beta: Bipartition, alpha: Bipartition) -> RatKP:
        return self.entries[self.E.index(beta)][self.E.index(alpha)]

    def rows(self) -> list[list[RatKP]]:
        return [list(r) for r in self.entries]

    def to_json(self) -> dict:
        return {
            "basis": [b.to_json() for b in self.basis],
            "entries": [[str(x) for x in row] for row in self.entries],
        }


class SupportError(RuntimeError):
    pass


def transition_matrix(E: EquivClass, k: RatKP = K, rule: str = CANONICAL, memo: MemoStore | None = None) -> TransitionMatrix:
    n = len(E.members)
    rows = la.zeros(n)
    for j, alpha in enumerate(E.members):
        col = q_column(alpha, E.pt, k, rule, memo)
        for beta, v in col.items():
            if beta not in E:
                raise SupportError(f"{beta} outside the class of {alpha}")
            rows[E.index(beta)][j] = v
    inds = E.indicators
    for i in range(n):
        for j in range(n):
            v = rows[i][j]
            if i == j and v != ONE:
                raise SupportError("diagonal entry differs from 1")
            if not v.is_zero() and any(a > b for a, b in zip(inds[i], inds[j])):
                raise SupportError("entry outside the inclusion support")
    return TransitionMatrix(E, tuple(tuple(r) for r in rows), k)


def inverse_transition(A: TransitionMatrix) -> TransitionMatrix:
    inv = la.upper_unitriangular_inverse(A.rows())
    return TransitionMatrix(A.E, tuple(tuple(r) for r in inv), A.k)


def lambda_components(alpha: Bipartition, beta: Bipartition) -> int:
    return len(connected_components(alpha.lam.boxes() - beta.lam.boxes()))


@dataclass(frozen=True)
class PoleLine:
    beta: Bipartition
    alpha: Bipartition
    valuation: int | None
    expected: int
    ok: bool


@dataclass(frozen=True)
class PoleReport:
    lines: tuple[PoleLine, ...]

    @property
    def ok(self) -> bool:
        return all(line.ok for line in self.lines)

    def failures(self) -> list[PoleLine]:
        return [line for line in self.lines if not line.ok]


def verify_pole_orders(A: TransitionMatrix) -> PoleReport:
    """-valuation(a_{beta alpha}) against the component count of alpha - beta.

    Every beta below alpha must carry a nonzero entry; entries off the
    support must vanish.
    """
    E = A.E
    lines = []
    for j, alpha in enumerate(E.members):
        for i, beta in enumerate(E.members):
            v = A.entries[i][j]
            below = all(a <= b for a, b in zip(E.indicators[i], E.indicators[j]))
            if not below:
                lines.append(PoleLine(beta, alpha, None, 0, v.is_zero()))
                continue
            expected = lambda_components(alpha, beta)
            if v.is_zero():
                lines.append(PoleLine(beta, alpha, None, expected, False))
                continue
            val = valuation(v, E.pt, A.k)
            lines.append(PoleLine(beta, alpha, val, expected, -val == expected))
    return PoleReport(tuple(lines))


def p_pole_order(Ainv: TransitionMatrix, alpha: Bipartition) -> int:
    """Pole order of P_alpha: the worst pole in its column of A^{-1}."""
    j = Ainv.E.index(alpha)
    worst = 0
    for row in Ainv.entries:
        v = row[j]
        if not v.is_zero():
            worst = max(worst, -valuation(v, Ainv.pt, Ainv.k))
    return worst


def eigen_diagonal(E: EquivClass, s: int, k: RatKP = K) -> list[list[RatKP]]:
    """D^(s): the diagonal of b_s over the class members."""
    return la.diag(b_r(a, s, k) for a in E.members)


def b_matrix(A: TransitionMatrix, Ainv: TransitionMatrix, s: int) -> list[list[RatKP]]:
    """B^(s) = A^{-1} D^(s) A - D^(s)."""
    D = eigen_diagonal(A.E, s, A.k)
    return la.sub(la.matmul(la.matmul(Ainv.rows(), D), A.rows()), D)


def b_matrix_regular(A: TransitionMatrix, Ainv: TransitionMatrix, s: int) -> bool:
    """True iff h B^(s) has no pole at the point (every entry has valuation >= -1)."""
    for row in b_matrix(A, Ainv, s):
        for v in row:
            if not v.is_zero() and valuation(v, A.pt, A.k) < -1:
                return False
    return True


@dataclass(frozen=True)
class BoxOrderDiagnostic:
    same: bool
    differing_entries: int


def box_order_diagnostic(E: EquivClass, k: RatKP = K, memo: MemoStore | None = None) -> BoxOrderDiagnostic:
    """Compare A built with the canonical and the alternate box rule."""
    a = transition_matrix(E, k, CANONICAL, memo)
    b = transition_matrix(E, k, ALTERNATE, memo)
    diff = sum(1 for ra, rb in zip(a.entries, b.entries) for x, y in zip(ra, rb) if x != y)
    return BoxOrderDiagnostic(diff == 0, diff)


__all__ = [
    "RecursionFailure",
    "SupportError",
    "MemoStore",
    "DEFAULT_MEMO",
    "CANONICAL",
    "ALTERNATE",
    "cached_class",
    "choose_box",
    "translate",
    "q_column",
    "TransitionMatrix",
    "transition_matrix",
    "inverse_transition",
    "lambda_components",
    "PoleLine",
    "PoleReport",
    "verify_pole_orders",
    "p_pole_order",
    "eigen_diagonal",
    "b_matrix",
    "b_matrix_regular",
    "BoxOrderDiagnostic",
    "box_order_diagnostic",
]
