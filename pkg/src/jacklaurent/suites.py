"""Property checks shared by the ``verify`` command and the test-suite.

Every check returns a :class:`CheckResult`; nothing here raises on a failed
property, so a driver can collect and report all of them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .diagrams import (
    Bipartition,
    Box,
    Rectangle,
    bipartitions_in_rectangle,
    connected_components,
    omega,
    theta,
    theta_set,
)
from .epsalgebra import (
    AlgebraError,
    vandermonde_delta,
    build_algebra,
    delta_signs,
    verify_system,
)
from .exactfield import K, P0, RatKP, SpecialPoint, parse, valuation
from .pieri import count_vanishing_factors, predicted_zero_orders, u_factors
from .regbasis import (
    MemoStore,
    RecursionFailure,
    SupportError,
    TransitionMatrix,
    b_matrix_regular,
    inverse_transition,
    p_pole_order,
    transition_matrix,
    verify_pole_orders,
)
from .spectrum import (
    EquivClass,
    content,
    equivalence_class,
    intersection_components,
    is_E_equivalent_geometric,
    is_E_equivalent_oracle,
    is_R_equivalent,
    mu_shift,
    pole_order_prediction,
)


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failed: int = 0
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def check(self, cond: bool, detail: str = "") -> bool:
        if cond:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.details) < 20:
                self.details.append(detail)
        return cond

    def merge(self, other: "CheckResult") -> "CheckResult":
        self.passed += other.passed
        self.failed += other.failed
        self.details.extend(other.details[: max(0, 20 - len(self.details))])
        return self

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "failed": self.failed, "details": list(self.details)}


# -- families of bipartitions --------------------------------------------------

Outside = tuple  # (frozenset of lambda boxes, frozenset of mu boxes), all outside the rectangle


def attach(beta: Bipartition, outside: Outside | None) -> Bipartition | None:
    if not outside:
        return beta
    lam, mu = beta.boxes()
    return Bipartition.from_box_sets(lam | set(outside[0]), mu | set(outside[1]))


def family(n: int, m: int, outside: Outside | None = None) -> list[Bipartition]:
    """Bipartitions whose part inside the n x m rectangle is arbitrary and whose
    part outside it equals ``outside``."""
    out = []
    for beta in bipartitions_in_rectangle(n, m):
        g = attach(beta, outside)
        if g is not None:
            out.append(g)
    return out


def classes_of(n: int, m: int, outside: Outside | None = None) -> list[EquivClass]:
    pt = SpecialPoint(n, m)
    seen: set = set()
    out = []
    for a in family(n, m, outside):
        if a in seen:
            continue
        E = equivalence_class(a, pt)
        seen.update(E.members)
        out.append(E)
    return out


def extra_lambda_box(m: int) -> Outside:
    """One lambda box just beyond the last column of the first row."""
    return (frozenset({Box(1, m + 1)}), frozenset())


# -- the smallest pole ------------------------------------------------------------


def fixed_vector() -> CheckResult:
    res = CheckResult("fixed_vector")
    pt = SpecialPoint(1, 1)
    f = parse("p0/(1+k-k*p0)")
    res.check(valuation(f, pt) == -1, "valuation of p0/(1+k-k p0) at (1,1)")
    a = Bipartition.of((1,), (1,))
    E = equivalence_class(a, pt)
    res.check(set(E.members) == {Bipartition.of(), a}, "class of ((1),(1))")
    res.check(E.r == 1, "r = 1")
    A = transition_matrix(E)
    Ai = inverse_transition(A)
    res.check(p_pole_order(Ai, a) == 1, "pole order of P_((1),(1))")
    # P_((1),(1)) = p_1 p_-1 - p0/(1+k-k p0), so Q_((1),(1)) = P + a P_(empty) is p_1 p_-1 exactly
    entry = A.entry(Bipartition.of(), a)
    res.check(entry == f, f"a_(empty),((1),(1)) = {entry}, expected {f}")
    res.check(valuation(entry, pt) == -1, "simple pole of a_{min,max}")
    return res


# -- class structure ------------------------------------------------------------


def _within(a: Bipartition, rect: Rectangle):
    P = rect.boxes()
    lam, mu = a.boxes()
    return lam & P, theta_set(mu & P, rect)


def class_structure(n: int, m: int, outside: Outside | None = None, pairwise: bool = True) -> CheckResult:
    """Geometric vs oracle equivalence, 2^r members, extremal members, and
    the symbolic-p0 triviality, over one family of bipartitions."""
    res = CheckResult(f"class_structure {n}x{m}" + (" +outside" if outside else ""))
    pt = SpecialPoint(n, m)
    rect = Rectangle(n, m)
    P = rect.boxes()
    fam = family(n, m, outside)
    if pairwise:
        for a, b in itertools.combinations_with_replacement(fam, 2):
            geo = is_E_equivalent_geometric(a, b, pt)
            orc = is_E_equivalent_oracle(a, b, pt)
            res.check(geo == orc, f"geometric {geo} vs oracle {orc} for {a} {b}")
            sym = is_E_equivalent_oracle(a, b, None)
            res.check(sym == (a == b), f"symbolic oracle {sym} for {a} {b}")
    famset = set(fam)
    for E in classes_of(n, m, outside):
        res.check(len(E.members) == 2 ** E.r, f"|class| != 2^r for {E.alpha_min}")
        res.check(all(b in famset for b in E.members), f"member outside family in class of {E.alpha_min}")
        forced = frozenset().union(*(nu for nu, _ in E.forced)) if E.forced else frozenset()
        mins = [b for b in E.members if (lambda lt: lt[0] & lt[1])(_within(b, rect)) == forced]
        maxs = [b for b in E.members if (lambda lt: lt[0] | lt[1])(_within(b, rect)) == P]
        res.check(mins == [E.alpha_min], f"alpha_min characterization for {E.alpha_min}")
        res.check(maxs == [E.alpha_max], f"alpha_max characterization for {E.alpha_max}")
        for b in E.members:
            res.check(E.alpha_min.lam.boxes() <= b.lam.boxes() <= E.alpha_max.lam.boxes(), f"{b} not between extremes")
        equiv = [b for b in fam if is_E_equivalent_oracle(E.alpha_min, b, pt)]
        res.check(set(equiv) == set(E.members), f"oracle class differs from resolved class of {E.alpha_min}")
    return res


def outside_part_witness() -> dict:
    """A bipartition whose class is smaller than the class of its part inside
    the rectangle with the outside part attached."""
    pt = SpecialPoint(1, 1)
    a = Bipartition.of((2,), (1,))
    inner = Bipartition.of((1,), (1,))
    E = equivalence_class(a, pt)
    Ein = equivalence_class(inner, pt)
    outside = (frozenset({Box(1, 2)}), frozenset())
    shifted = [attach(b, outside) for b in Ein.members]
    return {
        "alpha": a,
        "class": list(E.members),
        "inner_class": list(Ein.members),
        "shifted": shifted,
        "oracle_singleton": all(
            not is_E_equivalent_oracle(a, b, pt) for b in family(1, 1, outside) if b != a
        ),
    }


# -- conjugation by omega ----------------------------------------------------------


def omega_conjugation(n: int, m: int) -> CheckResult:
    res = CheckResult(f"omega {n}x{m}")
    pt = SpecialPoint(n, m)
    rect = Rectangle(n, m)
    fam = bipartitions_in_rectangle(n, m)
    om = {a: omega(a, rect) for a in fam}
    for a in fam:
        res.check(omega(om[a], rect) == a, f"omega not an involution at {a}")
    for a, b in itertools.combinations_with_replacement(fam, 2):
        e = is_E_equivalent_oracle(a, b, pt)
        r = is_R_equivalent(om[a], om[b])
        res.check(e == r, f"E {e} vs R(omega) {r} for {a} {b}")
    return res


# -- contents under theta ------------------------------------------------------------


def theta_content_identity(n: int, m: int) -> CheckResult:
    res = CheckResult(f"theta contents {n}x{m}")
    rect = Rectangle(n, m)
    shift = mu_shift()
    h = SpecialPoint(n, m).h()
    for x in sorted(rect.boxes()):
        lhs = content(theta(x, rect), shift)
        rhs = h - content(x, 0)
        res.check(lhs == rhs, f"identity fails at {tuple(x)}")
    return res


# -- zero orders of U ----------------------------------------------------------------


def zero_order_audit(n: int, m: int) -> CheckResult:
    res = CheckResult(f"zero orders {n}x{m}")
    pt = SpecialPoint(n, m)
    rect = Rectangle(n, m)
    for a in bipartitions_in_rectangle(n, m):
        for x in sorted(rect.boxes()):
            if a.mu.remove_box(theta(x, rect)) is None:
                continue
            rep = predicted_zero_orders(x, a, rect)
            cnt = count_vanishing_factors(x, a, pt)
            got = (cnt.numerator, cnt.denominator)
            want = (rep.numerator_zero_order, rep.denominator_zero_order)
            if not res.check(got == want, ""):
                num, den = u_factors(theta(x, rect), a)
                res.details[-1] = (
                    f"x={tuple(x)} alpha={a}: predicate {want} {rep.triggered_conditions}, counted {got}; "
                    f"numerator factors {[str(f) for f in num]}, denominator factors {[str(f) for f in den]}"
                )
    return res


# -- per-class checks ---------------------------------------------------------------


def transition_checks(
    E: EquivClass, k: RatKP = K, memo: MemoStore | None = None, A: TransitionMatrix | None = None
) -> tuple[CheckResult, object, object]:
    res = CheckResult(f"transition {E.alpha_min}")
    if A is None:
        try:
            A = transition_matrix(E, k, memo=memo)
        except (RecursionFailure, SupportError, ZeroDivisionError) as exc:
            res.check(False, f"{E.alpha_min}: {exc}")
            return res, None, None
    Ai = inverse_transition(A)
    for j, a in enumerate(E.members):
        res.check(A.entries[j][j] == 1, f"a_aa != 1 at {a}")
    rep = verify_pole_orders(A)
    for line in rep.lines:
        res.check(line.ok, f"pole order a[{line.beta},{line.alpha}] = {line.valuation}, expected -{line.expected}")
    for a in E.members:
        pred = pole_order_prediction(a, E.pt)
        res.check(p_pole_order(Ai, a) == pred, f"column pole order of A^-1 at {a}")
        if not E.forced and not any(E.outside):
            res.check(pred == intersection_components(a, E.pt), f"prediction vs intersection components at {a}")
    for s in range(1, E.r + 2):
        res.check(b_matrix_regular(A, Ai, s), f"h B^({s}) not regular for class of {E.alpha_min}")
    return res, A, Ai


def delta_checks(E: EquivClass) -> CheckResult:
    res = CheckResult(f"delta {E.alpha_min}")
    comps = [nu for nu, _ in E.components]
    try:
        ds = delta_signs(comps)
    except AlgebraError as exc:
        res.check(False, f"{E.alpha_min}: {exc}")
        return res
    res.check(not ds.delta.is_zero(), f"Delta = 0 for {E.alpha_min}")
    res.check(ds.sign_law_ok, f"sign law fails for {E.alpha_min}: {ds.delta}")
    if E.r in (2, 3):
        res.check(ds.constant_negative and ds.top_positive, f"constant/top signs for {E.alpha_min}: {ds.delta}")
    return res


def delta_witness() -> CheckResult:
    """Two single-box components {(1,2)} and {(2,1)} give det [[1,1],[1,k]]."""
    res = CheckResult("delta witness")
    d = vandermonde_delta([{Box(1, 2)}, {Box(2, 1)}])
    res.check(d == K - 1, f"got {d}")
    return res


def algebra_checks(E: EquivClass, A, Ai) -> CheckResult:
    res = CheckResult(f"algebra {E.alpha_min}")
    try:
        et, eps, alg = build_algebra(E, A, Ai, strict=False)
    except AlgebraError as exc:
        res.check(False, f"{E.alpha_min}: {exc}")
        return res
    for name, good in alg.relations.items():
        res.check(good, f"{name} fails for {E.alpha_min}")
    rep = verify_system(E, A, Ai, et, eps)
    for s, good in enumerate(rep.prelimit, 1):
        res.check(good, f"B^({s}) identity fails for {E.alpha_min}")
    for s, good in enumerate(rep.limit, 1):
        res.check(good, f"limit system s={s} fails for {E.alpha_min}")
    n = len(E.members)
    for i, e in enumerate(eps):
        strict_upper = all(e[b][a].is_zero() for b in range(n) for a in range(n) if b >= a)
        res.check(strict_upper, f"eps_{i + 1} not strictly upper for {E.alpha_min}")
    return res


def class_suite(E: EquivClass, k: RatKP = K, algebra: bool = True, A: TransitionMatrix | None = None) -> CheckResult:
    """Transition, determinant and algebra checks for one class."""
    res = CheckResult(f"class {E.alpha_min} at {E.pt.n}x{E.pt.m}")
    t, A, Ai = transition_checks(E, k, A=A)
    res.merge(t)
    res.merge(delta_checks(E))
    if algebra and A is not None:
        res.merge(algebra_checks(E, A, Ai))
    return res


def sample_classes(n: int, m: int, count: int, outside: Outside | None = None) -> list[EquivClass]:
    """A deterministic sample: the classes of largest r first, then spread
    evenly over the rest."""
    allc = classes_of(n, m, outside)
    big = sorted(allc, key=lambda E: -E.r)
    chosen = big[: max(1, count // 2)]
    rest = [E for E in allc if E not in chosen]
    need = count - len(chosen)
    if need > 0 and rest:
        step = max(1, len(rest) // need)
        chosen += rest[::step][:need]
    return chosen


__all__ = [
    "CheckResult",
    "attach",
    "family",
    "classes_of",
    "extra_lambda_box",
    "fixed_vector",
    "class_structure",
    "outside_part_witness",
    "omega_conjugation",
    "theta_content_identity",
    "zero_order_audit",
    "transition_checks",
    "delta_checks",
    "delta_witness",
    "algebra_checks",
    "class_suite",
    "sample_classes",
]
