"""End-to-end acceptance checks. Each test prints one PASS/FAIL line.

Every check uses exact arithmetic in Q(k, p0); nothing is compared with a
tolerance. Scopes are exhaustive where the sampled minimum would allow less.
"""

import json
import random

import pytest

from jacklaurent.cli import run_verify
from jacklaurent.exactfield import EXACT, ONE, ZERO, PolyKP, RatKP, SpecialPoint, valuation
from jacklaurent.regbasis import MemoStore
from jacklaurent.suites import (
    CheckResult,
    algebra_checks,
    class_structure,
    classes_of,
    delta_checks,
    delta_witness,
    extra_lambda_box,
    fixed_vector,
    omega_conjugation,
    outside_part_witness,
    theta_content_identity,
    transition_checks,
    zero_order_audit,
)

SMALL = [(n, m) for n in (1, 2) for m in (1, 2)]
UP_TO_3 = [(n, m) for n in (1, 2, 3) for m in (1, 2, 3)]
CLASS_RECTS = SMALL + [(3, 2), (2, 3), (3, 3)]


def _summary(results: list[CheckResult]) -> tuple[bool, str]:
    passed = sum(r.passed for r in results)
    failed = sum(r.failed for r in results)
    first = next((d for r in results for d in r.details), "")
    detail = f"{passed} checks passed, {failed} failed"
    if first:
        detail += f"; first failure: {first}"
    return failed == 0 and passed > 0, detail


@pytest.fixture(scope="module")
def per_class():
    """Transition, determinant and algebra results for every class in scope,
    with and without the outside box, computed once."""
    out = {}
    for outside in (None, "box"):
        trans, delta, alg = [], [], []
        for n, m in CLASS_RECTS:
            memo = MemoStore()
            extra = extra_lambda_box(m) if outside else None
            for E in classes_of(n, m, extra):
                t, A, Ai = transition_checks(E, memo=memo)
                trans.append(t)
                delta.append(delta_checks(E))
                if A is not None:
                    alg.append(algebra_checks(E, A, Ai))
        out[outside] = (trans, delta, alg)
    return out


def test_unit_square_fixed_vector(criterion):
    res = fixed_vector()
    ok, detail = _summary([res])
    assert criterion(1, "simple pole of the unit-square vector", ok, detail)


def test_class_structure_up_to_3x3(criterion):
    results = [class_structure(n, m) for n, m in UP_TO_3]
    ok, detail = _summary(results)
    assert criterion(2, "class structure for rectangles up to 3x3", ok, detail)


def test_omega_conjugates_equivalences(criterion):
    results = [omega_conjugation(n, m) for n, m in UP_TO_3]
    ok, detail = _summary(results)
    assert criterion(3, "omega turns E-equivalence into R-equivalence up to 3x3", ok, detail)


def test_theta_content_identity_up_to_4x4(criterion):
    results = [theta_content_identity(n, m) for n in range(1, 5) for m in range(1, 5)]
    ok, detail = _summary(results)
    assert criterion(4, "contents under theta up to 4x4", ok, detail)


def test_zero_order_predicate_matches_counts(criterion):
    results = [zero_order_audit(n, m) for n, m in UP_TO_3]
    ok, detail = _summary(results)
    assert criterion(5, "zero/pole predicate of U vs factor counts up to 3x3", ok, detail)


def test_transition_matrices_every_class(criterion, per_class):
    ok, detail = _summary(per_class[None][0])
    assert criterion(6, "transition matrix poles and B-matrix regularity, all classes up to 3x3", ok, detail)


def test_power_sum_determinants(criterion, per_class):
    results = per_class[None][1] + per_class["box"][1] + [delta_witness()]
    ok, detail = _summary(results)
    assert criterion(7, "power-sum determinants nonzero with the sign law", ok, detail)


def test_dual_number_algebras(criterion, per_class):
    ok, detail = _summary(per_class[None][2])
    assert criterion(8, "dual-number algebra relations and limit systems, all classes up to 3x3", ok, detail)


def test_outside_part_attached(criterion, per_class):
    results = [class_structure(n, m, extra_lambda_box(m)) for n, m in UP_TO_3]
    trans, _, alg = per_class["box"]
    results += trans + alg
    w = outside_part_witness()
    witness = CheckResult("outside witness")
    witness.check(w["class"] == [w["alpha"]] and w["oracle_singleton"], "class with outside box is a singleton")
    witness.check(len(w["inner_class"]) == 2, "inner class has two members")
    results.append(witness)
    ok, detail = _summary(results)
    assert criterion(9, "class structure and transition checks with an outside box", ok, detail)


# -- infrastructure -----------------------------------------------------------------


def _random_poly(rng: random.Random) -> PolyKP:
    terms = {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-6, 6) for _ in range(rng.randint(1, 3))}
    return PolyKP(terms)


def _random_rat(rng: random.Random, pt: SpecialPoint) -> RatKP:
    den = _random_poly(rng)
    while den.is_zero():
        den = _random_poly(rng)
    x = RatKP(_random_poly(rng), den)
    # push some samples onto the special point so valuations are nonzero
    return x * pt.h() ** rng.randint(-2, 2)


def field_law_samples(triples: int, seed: int) -> CheckResult:
    """Ring, inverse and valuation laws on ``3 * triples`` random elements."""
    res = CheckResult("field and valuation laws")
    rng = random.Random(seed)
    for _ in range(triples):
        pt = SpecialPoint(rng.randint(1, 3), rng.randint(1, 3))
        a, b, c = (_random_rat(rng, pt) for _ in range(3))
        res.check(a + b == b + a and a * b == b * a, f"commutativity {a}, {b}")
        res.check((a + b) + c == a + (b + c), f"additive associativity {a}, {b}, {c}")
        res.check((a * b) * c == a * (b * c), f"multiplicative associativity {a}, {b}, {c}")
        res.check(a * (b + c) == a * b + a * c, f"distributivity {a}, {b}, {c}")
        res.check(a + ZERO == a and a * ONE == a and a - a == ZERO, f"identities {a}")
        if a.is_zero() or b.is_zero():
            continue
        res.check(a * (ONE / a) == ONE, f"inverse {a}")
        va, vb = valuation(a, pt), valuation(b, pt)
        res.check(valuation(a * b, pt) == va + vb, f"valuation of product {a}, {b}")
        res.check(valuation(ONE / a, pt) == -va, f"valuation of inverse {a}")
        s = a + b
        if not s.is_zero():
            vs = valuation(s, pt)
            res.check(vs >= min(va, vb), f"valuation of sum {a}, {b}")
            if va != vb:
                res.check(vs == min(va, vb), f"strict valuation of sum {a}, {b}")
    return res


def test_infrastructure_determinism_and_field_laws(criterion):
    serial = run_verify(2, 2, EXACT, 1, None)
    parallel = run_verify(2, 2, EXACT, 3, None)
    determinism = CheckResult("determinism across job counts")
    determinism.check(
        json.dumps(serial, sort_keys=True) == json.dumps(parallel, sort_keys=True), "serial and parallel summaries differ"
    )
    determinism.check(serial["ok"], "verify up to 2x2 failed")
    triples = 4000
    laws = field_law_samples(triples, seed=20251)
    ok, detail = _summary([determinism, laws])
    title = f"deterministic parallel verify and field laws on {3 * triples} random elements"
    assert criterion(10, title, ok, detail)
