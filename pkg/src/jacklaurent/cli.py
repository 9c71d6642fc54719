"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage or parse error.
JSON written to stdout is deterministic in exact mode; timing goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import repeat

from . import suites
from .cache import ResultCache, resolve_cache_dir
from .diagrams import Bipartition, Box, Partition, Rectangle, render_ascii, theta
from .epsalgebra import AlgebraError, build_algebra, verify_system
from .exactfield import EXACT, FieldMode, SpecialPoint, probe_mode, valuation
from .pieri import (
    DegenerateCoefficient,
    U_coeff,
    V_coeff,
    count_vanishing_factors,
    predicted_zero_orders,
)
from .regbasis import (
    RecursionFailure,
    SupportError,
    TransitionMatrix,
    b_matrix_regular,
    inverse_transition,
    p_pole_order,
    transition_matrix,
    verify_pole_orders,
)
from .spectrum import ClassStructureError, EquivClass, equivalence_class, pole_order_prediction


class UsageError(ValueError):
    pass


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return Partition(())
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"bad partition {text!r}") from None
    if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise UsageError(f"not a partition: {text!r}")
    return Partition(parts)


def parse_bipartition(text: str) -> Bipartition:
    """Parse "2,1;1"; either side may be empty."""
    if text.count(";") != 1:
        raise UsageError(f"expected 'lambda;mu', got {text!r}")
    lam, mu = text.split(";")
    return Bipartition(parse_partition(lam), parse_partition(mu))


def parse_box(text: str) -> Box:
    try:
        i, j = (int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"expected 'i,j', got {text!r}") from None
    return Box(i, j)


@dataclass(frozen=True)
class RunConfig:
    n: int
    m: int
    mode: FieldMode
    output: str
    cache: ResultCache

    @property
    def pt(self) -> SpecialPoint:
        return SpecialPoint(self.n, self.m)

    @property
    def rect(self) -> Rectangle:
        return Rectangle(self.n, self.m)


@dataclass
class Report:
    command: dict
    result: dict
    passed: int = 0
    failed: int = 0

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "result": self.result,
            "passed": self.passed,
            "failed": self.failed,
            "ok": self.failed == 0,
        }


def _box(x) -> list[int]:
    return [x[0], x[1]]


# -- matrices through the cache --------------------------------------------------


def cached_transition(E: EquivClass, mode: FieldMode, cache: ResultCache) -> TransitionMatrix:
    tag = "exact" if mode.exact else f"probe:{mode.seed}"
    A = cache.load_matrix(E, tag, mode.k)
    if A is None:
        A = transition_matrix(E, mode.k)
        cache.store_matrix(A, tag)
    return A


# -- subcommands ---------------------------------------------------------------


def cmd_class(cfg: RunConfig, alpha: Bipartition) -> Report:
    E = equivalence_class(alpha, cfg.pt)
    out = E.to_json()
    out["r"] = E.r
    out["indicators"] = [list(t) for t in E.indicators]
    out["render"] = render_ascii(alpha, cfg.rect)
    return Report({}, out, passed=1)


def cmd_render(cfg: RunConfig, alpha: Bipartition) -> Report:
    return Report({}, {"render": render_ascii(alpha, cfg.rect)}, passed=1)


def cmd_pieri(cfg: RunConfig, alpha: Bipartition, x: Box) -> Report:
    if x not in cfg.rect:
        raise UsageError(f"box {tuple(x)} lies outside the {cfg.n}x{cfg.m} rectangle")
    k = cfg.mode.k
    tx = theta(x, cfg.rect)
    out: dict = {"box": _box(x), "theta_box": _box(tx), "u": None, "v": None}
    rep = Report({}, out)
    if alpha.mu.remove_box(tx) is not None:
        f = U_coeff(tx, alpha, k)
        val = None if f.product.is_zero() else valuation(f.product, cfg.pt, k)
        pred = predicted_zero_orders(x, alpha, cfg.rect)
        cnt = count_vanishing_factors(x, alpha, cfg.pt, k)
        agree = (pred.numerator_zero_order, pred.denominator_zero_order) == (cnt.numerator, cnt.denominator)
        out["u"] = {
            "u1": str(f.u1),
            "u2": str(f.u2),
            "u3": str(f.u3),
            "product": str(f.product),
            "valuation": val,
            "order_report": {
                "numerator_zero_order": pred.numerator_zero_order,
                "denominator_zero_order": pred.denominator_zero_order,
                "triggered_conditions": list(pred.triggered_conditions),
                "counted": [cnt.numerator, cnt.denominator],
                "agree": agree,
            },
        }
        if agree:
            rep.passed += 1
        else:
            rep.failed += 1
    if alpha.lam.add_box(x) is not None:
        v = V_coeff(x, alpha, k)
        out["v"] = {"value": str(v), "valuation": None if v.is_zero() else valuation(v, cfg.pt, k)}
    return rep


def cmd_transition(cfg: RunConfig, alpha: Bipartition) -> Report:
    E = equivalence_class(alpha, cfg.pt)
    A = cached_transition(E, cfg.mode, cfg.cache)
    Ai = inverse_transition(A)
    poles = verify_pole_orders(A)
    orders = [
        {"member": a.to_json(), "order": p_pole_order(Ai, a), "prediction": pole_order_prediction(a, E.pt)}
        for a in E.members
    ]
    regular = [b_matrix_regular(A, Ai, s) for s in range(1, E.r + 2)]
    out = A.to_json()
    out["inverse"] = [[str(x) for x in row] for row in Ai.entries]
    out["pole_report"] = [
        {
            "beta": line.beta.to_json(),
            "alpha": line.alpha.to_json(),
            "valuation": line.valuation,
            "expected": line.expected,
            "ok": line.ok,
        }
        for line in poles.lines
    ]
    out["pole_orders"] = orders
    out["b_regular"] = regular
    checks = [line.ok for line in poles.lines] + [o["order"] == o["prediction"] for o in orders] + regular
    return Report({}, out, passed=sum(checks), failed=len(checks) - sum(checks))


def cmd_algebra(cfg: RunConfig, alpha: Bipartition) -> Report:
    E = equivalence_class(alpha, cfg.pt)
    A = cached_transition(E, cfg.mode, cfg.cache)
    Ai = inverse_transition(A)
    et, eps, alg = build_algebra(E, A, Ai, strict=False)
    system = verify_system(E, A, Ai, et, eps)
    out = alg.to_json()
    out["basis"] = [b.to_json() for b in E.members]
    out["prelimit"] = list(system.prelimit)
    out["limit"] = list(system.limit)
    checks = list(alg.relations.values()) + list(system.prelimit) + list(system.limit)
    return Report({}, out, passed=sum(checks), failed=len(checks) - sum(checks))


# -- verify driver -------------------------------------------------------------------


def _mode_from(name: str, seed: int) -> FieldMode:
    return EXACT if name == "exact" else probe_mode(seed)


def _run_task(task: tuple, mode_name: str, seed: int, cache_root: str | None) -> dict:
    kind = task[0]
    if kind == "fixed_vector":
        res = suites.fixed_vector()
    elif kind == "delta_witness":
        res = suites.delta_witness()
    elif kind == "outside_witness":
        w = suites.outside_part_witness()
        res = suites.CheckResult("outside part witness")
        res.check(len(w["class"]) == 1 and w["oracle_singleton"], "class of ((2),(1)) at 1x1 is not a singleton")
    elif kind == "structure":
        _, n, m, outside = task
        res = suites.class_structure(n, m, suites.extra_lambda_box(m) if outside else None)
    elif kind == "omega":
        res = suites.omega_conjugation(task[1], task[2])
    elif kind == "theta":
        res = suites.theta_content_identity(task[1], task[2])
    elif kind == "zero_orders":
        res = suites.zero_order_audit(task[1], task[2])
    elif kind == "class":
        _, n, m, outside, alpha = task
        mode = _mode_from(mode_name, seed)
        E = equivalence_class(Bipartition.from_json(alpha), SpecialPoint(n, m))
        cache = ResultCache(cache_root)
        try:
            A = cached_transition(E, mode, cache)
        except (RecursionFailure, SupportError, ZeroDivisionError) as exc:
            res = suites.CheckResult(f"class {E.alpha_min}")
            res.check(False, f"{E.alpha_min}: {exc}")
            return res.to_json()
        res = suites.class_suite(E, mode.k, A=A)
    else:
        raise ValueError(f"unknown task {kind!r}")
    return res.to_json()


def verify_tasks(max_n: int, max_m: int) -> list[tuple[str, tuple]]:
    """(group name, task) pairs in reporting order."""
    out = [("fixed vector", ("fixed_vector",)), ("delta witness", ("delta_witness",))]
    out.append(("outside part witness", ("outside_witness",)))
    for n in range(1, max_n + 1):
        for m in range(1, max_m + 1):
            tag = f"{n}x{m}"
            out.append((f"class structure {tag}", ("structure", n, m, False)))
            out.append((f"class structure {tag} +outside", ("structure", n, m, True)))
            out.append((f"omega conjugation {tag}", ("omega", n, m)))
            out.append((f"theta contents {tag}", ("theta", n, m)))
            out.append((f"zero orders {tag}", ("zero_orders", n, m)))
            for outside in (False, True):
                fam = suites.classes_of(n, m, suites.extra_lambda_box(m) if outside else None)
                group = f"classes {tag}" + (" +outside" if outside else "")
                for E in fam:
                    out.append((group, ("class", n, m, outside, E.alpha_min.to_json())))
    return out


def run_verify(max_n: int, max_m: int, mode: FieldMode, jobs: int, cache_root: str | None) -> dict:
    tasks = verify_tasks(max_n, max_m)
    groups: dict[str, suites.CheckResult] = {}
    for name, _ in tasks:
        groups.setdefault(name, suites.CheckResult(name))
    mode_name = "exact" if mode.exact else "probe"
    seed = mode.seed or 0
    done = 0
    complete = True
    payload = [t for _, t in tasks]
    pool = None
    try:
        if jobs > 1:
            pool = ProcessPoolExecutor(max_workers=jobs)
            results = pool.map(_run_task, payload, repeat(mode_name), repeat(seed), repeat(cache_root), chunksize=4)
        else:
            results = (_run_task(t, mode_name, seed, cache_root) for t in payload)
        for (name, _), res in zip(tasks, results):
            g = groups[name]
            g.passed += res["passed"]
            g.failed += res["failed"]
            g.details.extend(res["details"][: max(0, 20 - len(g.details))])
            done += 1
    except KeyboardInterrupt:
        complete = False
    finally:
        if pool is not None:
            pool.shutdown(wait=complete, cancel_futures=True)
    suites_out = [g.to_json() for g in groups.values()]
    failed = sum(g.failed for g in groups.values())
    return {
        "bounds": [max_n, max_m],
        "mode": "exact" if mode.exact else f"probe:{mode.seed}",
        "advisory": not mode.exact,
        "complete": complete,
        "tasks": [done, len(tasks)],
        "suites": suites_out,
        "passed": sum(g.passed for g in groups.values()),
        "failed": failed,
        "ok": complete and failed == 0,
    }


# -- argument handling -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jacklaurent", description="Regular bases and generalized eigenspaces of Laurent Jack polynomials at special parameters.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("exact", "probe"), default="exact")
    common.add_argument("--seed", type=int, default=0, help="seed for probe mode")
    common.add_argument("--out", choices=("json", "text"), default="json", help="output format")
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--no-cache", action="store_true")

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("--n", type=int, required=True)
    point.add_argument("--m", type=int, required=True)
    point.add_argument("--alpha", required=True, help='bipartition "lambda;mu", e.g. "2,1;1"')

    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("class", parents=[common, point], help="equivalence class of a bipartition")
    sub.add_parser("render", parents=[common, point], help="ASCII picture of a bipartition")
    pp = sub.add_parser("pieri", parents=[common, point], help="Pieri coefficients for a box")
    pp.add_argument("--box", required=True, help="box i,j inside the rectangle")
    sub.add_parser("transition", parents=[common, point], help="transition matrix of a class")
    sub.add_parser("algebra", parents=[common, point], help="nilpotent operators of a class")
    vp = sub.add_parser("verify", parents=[common], help="run the property suites")
    vp.add_argument("--max-n", type=int, default=2)
    vp.add_argument("--max-m", type=int, default=2)
    vp.add_argument("--jobs", type=int, default=1)
    vp.add_argument("--summary", default=None, help="also write the JSON summary here")
    return p


def _emit(doc: dict, output: str, text: str) -> None:
    if output == "json":
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def _text_report(command: str, rep: Report) -> str:
    res = rep.result
    lines = []
    if "render" in res:
        lines.append(res["render"].rstrip("\n"))
    if command == "class":
        lines.append(f"r = {res['r']}")
        for mem, ind in zip(res["members"], res["indicators"]):
            lines.append(f"  {mem['lambda']} ; {mem['mu']}  {''.join(map(str, ind))}")
    elif command == "pieri":
        for key in ("u", "v"):
            if res[key] is not None:
                lines.append(f"{key}: {json.dumps(res[key], sort_keys=True)}")
    elif command in ("transition", "algebra"):
        lines.append(json.dumps(res, sort_keys=True, indent=1))
    lines.append(f"passed {rep.passed} failed {rep.failed}")
    return "\n".join(lines) + "\n"


def _verify_text(summary: dict) -> str:
    lines = []
    for s in summary["suites"]:
        state = "PASS" if s["failed"] == 0 and s["passed"] > 0 else "FAIL"
        lines.append(f"{state} {s['name']} ({s['passed']} passed, {s['failed']} failed)")
        for d in s["details"]:
            lines.append(f"    {d}")
    if not summary["complete"]:
        lines.append("INCOMPLETE run interrupted")
    lines.append(f"{'OK' if summary['ok'] else 'FAILED'} {summary['passed']} passed, {summary['failed']} failed")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    mode = EXACT if args.mode == "exact" else probe_mode(args.seed)
    cache_root = None if args.no_cache else str(resolve_cache_dir(args.cache_dir))
    echo = {k: v for k, v in sorted(vars(args).items()) if k not in ("cache_dir", "no_cache", "jobs", "summary")}
    try:
        if args.command == "verify":
            if args.max_n < 1 or args.max_m < 1 or args.jobs < 1:
                raise UsageError("bounds and --jobs must be at least 1")
            t0 = time.perf_counter()
            summary = run_verify(args.max_n, args.max_m, mode, args.jobs, cache_root)
            summary["command"] = echo
            print(f"verify finished in {time.perf_counter() - t0:.1f}s", file=sys.stderr)
            if args.summary:
                with open(args.summary, "w") as fh:
                    json.dump(summary, fh, sort_keys=True, indent=2)
                    fh.write("\n")
            _emit(summary, args.out, _verify_text(summary))
            return 0 if summary["ok"] else 1
        if args.n < 1 or args.m < 1:
            raise UsageError("--n and --m must be at least 1")
        alpha = parse_bipartition(args.alpha)
        cfg = RunConfig(args.n, args.m, mode, args.out, ResultCache(cache_root))
        if args.command == "class":
            rep = cmd_class(cfg, alpha)
        elif args.command == "render":
            rep = cmd_render(cfg, alpha)
        elif args.command == "pieri":
            rep = cmd_pieri(cfg, alpha, parse_box(args.box))
        elif args.command == "transition":
            rep = cmd_transition(cfg, alpha)
        else:
            rep = cmd_algebra(cfg, alpha)
    except UsageError as exc:
        print(f"jacklaurent: error: {exc}", file=sys.stderr)
        return 2
    except (ClassStructureError, RecursionFailure, SupportError, AlgebraError, DegenerateCoefficient) as exc:
        print(f"jacklaurent: {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    rep.command = echo
    _emit(rep.to_json(), args.out, _text_report(args.command, rep))
    return 0 if rep.failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
