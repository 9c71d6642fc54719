"""The nilpotent operators epsilon_i acting on a generalized eigenspace."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import _linalg as la
from .diagrams import Box, Rectangle, theta_set
from .exactfield import K, ONE, ZERO, RatKP, SpecialPoint, leading_coeff_at, valuation
from .regbasis import TransitionMatrix, eigen_diagonal
from .spectrum import EquivClass, content, mu_shift


def g_s(nu, s: int, k: RatKP = K) -> RatKP:
    """Sum over x in nu of c(x, 0)^(s-1)."""
    if s < 1:
        raise ValueError("s must be >= 1")
    total = ZERO
    for x in nu:
        total = total + content(x, 0, k) ** (s - 1)
    return total


def g_tilde_s(nu, s: int, rect: Rectangle, k: RatKP = K) -> RatKP:
    if s < 1:
        raise ValueError("s must be >= 1")
    total = g_s(nu, s, k)
    shift = mu_shift(k)
    tail = ZERO
    for x in theta_set(nu, rect):
        tail = tail + content(x, shift, k) ** (s - 1)
    return total + tail if s % 2 == 0 else total - tail


def g_tilde_limit_ok(nu, s: int, pt: SpecialPoint, k: RatKP = K) -> bool:
    """Check g~_s(nu) / h -> (s-1) g_{s-1}(nu) at the point."""
    gt = g_tilde_s(nu, s, Rectangle(pt.n, pt.m), k)
    expected = ZERO if s == 1 else (s - 1) * g_s(nu, s - 1, k)
    if gt.is_zero():
        return expected.is_zero()
    q = gt / pt.h(k)
    if valuation(q, pt, k) < 0:
        return False
    if valuation(q, pt, k) > 0:
        return expected.is_zero()
    return leading_coeff_at(q, pt, k) == expected


# -- determinant of power sums ---------------------------------------------


class AlgebraError(RuntimeError):
    pass


def vandermonde_delta(components, k: RatKP = K) -> RatKP:
    """det (g_s(nu_i)) for s, i = 1..r."""
    comps = [frozenset(Box(*x) for x in nu) for nu in components]
    r = len(comps)
    if r == 0:
        return ONE
    m = [[g_s(nu, s, k) for nu in comps] for s in range(1, r + 1)]
    d = la.det(m)
    if d.is_zero():
        raise AlgebraError("power-sum determinant vanishes")
    return d


@dataclass(frozen=True)
class DeltaSigns:
    delta: RatKP
    constant: int
    top: int
    expected_constant_sign: int

    @property
    def constant_negative(self) -> bool:
        return self.constant < 0

    @property
    def top_positive(self) -> bool:
        return self.top > 0

    @property
    def sign_law_ok(self) -> bool:
        """Constant term has sign (-1)^(r choose 2) and the top coefficient is positive."""
        return self.top > 0 and (self.constant > 0) == (self.expected_constant_sign > 0) and self.constant != 0


def delta_signs(components) -> DeltaSigns:
    d = vandermonde_delta(components)
    if not d.is_p0_free() or d.den.constant_value() is None:
        raise AlgebraError("determinant is not a polynomial in k")
    # the denominator is a positive constant, so signs can be read off num
    terms = {ek: c for (ek, _), c in d.num.terms().items()}
    top = terms[max(terms)]
    r = len(components)
    return DeltaSigns(d, int(terms.get(0, 0)), int(top), (-1) ** (r * (r - 1) // 2))


# -- epsilon matrices -----------------------------------------------------------


def epsilon_tilde(E: EquivClass, A: TransitionMatrix, Ainv: TransitionMatrix, i: int) -> list[list[RatKP]]:
    """Sum of ainv_{beta gamma} a_{gamma alpha} over gamma with rho_i in gamma - beta."""
    n = len(E.members)
    ind = E.indicators
    a = A.entries
    ai = Ainv.entries
    out = la.zeros(n)
    for b in range(n):
        if ind[b][i]:
            continue
        for al in range(n):
            acc = ZERO
            for g in range(n):
                if ind[g][i] and not ai[b][g].is_zero() and not a[g][al].is_zero():
                    acc = acc + ai[b][g] * a[g][al]
            out[b][al] = acc
    return out


def _limit(f: RatKP, pt: SpecialPoint, k: RatKP) -> RatKP:
    if f.is_zero():
        return ZERO
    v = valuation(f, pt, k)
    if v < 0:
        raise AlgebraError("limit does not exist")
    if v > 0:
        return ZERO
    return leading_coeff_at(f, pt, k)


def limit_matrix(m, pt: SpecialPoint, k: RatKP = K, factor: RatKP = ONE) -> list[list[RatKP]]:
    """Entrywise value at h = 0 of factor * m; raises if a pole survives."""
    return [[_limit(factor * x, pt, k) for x in row] for row in m]


def epsilon(E: EquivClass, eps_tilde, k: RatKP = K) -> list[list[RatKP]]:
    """lim h * epsilon~ at the point, an exact matrix over Q(k)."""
    return limit_matrix(eps_tilde, E.pt, k, E.pt.h(k))


@dataclass(frozen=True)
class SystemReport:
    prelimit: tuple[bool, ...]
    limit: tuple[bool, ...]

    @property
    def ok(self) -> bool:
        return all(self.prelimit) and all(self.limit)


def verify_system(E: EquivClass, A: TransitionMatrix, Ainv: TransitionMatrix, eps_tilde, eps) -> SystemReport:
    """Check B^(s) = sum g~_s(nu_i) eps~_i for s = 1..r+1 and the limit system
    sum g_s(nu_i) eps_i = lim B^(s+1) / s for s = 1..r.

    B^(s+1) itself has a finite limit: g~_(s+1) / h tends to s g_s and
    h eps~_i tends to eps_i.
    """
    k = A.k
    pt = E.pt
    rect = E.rect
    nus = [nu for nu, _ in E.components]
    r = len(nus)
    Ar, Air = A.rows(), Ainv.rows()
    bmats = {}
    for s in range(1, r + 2):
        D = eigen_diagonal(E, s, k)
        bmats[s] = la.sub(la.matmul(la.matmul(Air, D), Ar), D)
    pre = []
    for s in range(1, r + 2):
        rhs = la.zeros(len(E.members))
        for nu, et in zip(nus, eps_tilde):
            rhs = la.add(rhs, la.scale(g_tilde_s(nu, s, rect, k), et))
        pre.append(la.equal(bmats[s], rhs))
    lim = []
    for s in range(1, r + 1):
        lhs = la.zeros(len(E.members))
        for nu, e in zip(nus, eps):
            lhs = la.add(lhs, la.scale(g_s(nu, s, k), e))
        try:
            rhs = limit_matrix(bmats[s + 1], pt, k, ONE / s)
        except AlgebraError:
            lim.append(False)
            continue
        lim.append(la.equal(lhs, rhs))
    return SystemReport(tuple(pre), tuple(lim))


# -- dual numbers ---------------------------------------------------------------


@dataclass(frozen=True)
class EpsilonAlgebra:
    E: EquivClass
    epsilon: tuple
    products: dict = field(repr=False)
    witness: object
    relations: dict

    @property
    def r(self) -> int:
        return len(self.epsilon)

    @property
    def dimension(self) -> int:
        return 2 ** self.r if self.relations.get("independent", True) else -1

    @property
    def ok(self) -> bool:
        return all(self.relations.values())

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "epsilon": [[[str(x) for x in row] for row in e] for e in self.epsilon],
            "relations": dict(self.relations),
            "witness": None if self.witness is None else self.E.index(self.witness),
        }


def _product(mats, n):
    out = la.identity(n)
    for m in mats:
        out = la.matmul(out, m)
    return out


def verify_dual_numbers(E: EquivClass, eps, strict: bool = True) -> EpsilonAlgebra:
    n = len(E.members)
    r = len(eps)
    rel: dict[str, bool] = {}
    rel["square_zero"] = all(la.is_zero(la.matmul(e, e)) for e in eps)
    comm = True
    for a, b in itertools.combinations(range(r), 2):
        if not la.equal(la.matmul(eps[a], eps[b]), la.matmul(eps[b], eps[a])):
            comm = False
    rel["commute"] = comm
    products = {}
    for size in range(r + 1):
        for T in itertools.combinations(range(r), size):
            products[T] = _product([eps[t] for t in T], n)
    flat = [[x for row in m for x in row] for m in products.values()]
    rel["independent"] = la.rank(flat) == 2 ** r
    top = products[tuple(range(r))]
    witness = None
    for j in range(n):
        if any(not top[i][j].is_zero() for i in range(n)):
            witness = j
            break
    rel["socle_witness"] = witness is not None
    if witness is not None:
        vecs = [[m[i][witness] for i in range(n)] for m in products.values()]
        rel["regular_representation"] = la.rank(vecs) == n == 2 ** r
    else:
        rel["regular_representation"] = False
    alg = EpsilonAlgebra(
        E,
        tuple(eps),
        products,
        None if witness is None else E.members[witness],
        rel,
    )
    if strict and not alg.ok:
        failed = ", ".join(name for name, good in rel.items() if not good)
        raise AlgebraError(f"relation failed: {failed}")
    return alg


def build_algebra(E: EquivClass, A: TransitionMatrix, Ainv: TransitionMatrix, strict: bool = True):
    """epsilon~, epsilon and the verified algebra for a class."""
    et = [epsilon_tilde(E, A, Ainv, i) for i in range(E.r)]
    eps = [epsilon(E, m, A.k) for m in et]
    return et, eps, verify_dual_numbers(E, eps, strict)


__all__ = [
    "g_s",
    "g_tilde_s",
    "g_tilde_limit_ok",
    "AlgebraError",
    "vandermonde_delta",
    "DeltaSigns",
    "delta_signs",
    "epsilon_tilde",
    "limit_matrix",
    "epsilon",
    "SystemReport",
    "verify_system",
    "EpsilonAlgebra",
    "verify_dual_numbers",
    "build_algebra",
]
