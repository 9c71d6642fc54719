"""Heuristic polynomial gcd over Z by evaluation and base-x reconstruction.

Works on dense recursive polynomials: level 0 is an integer, level n is a
list (ascending degree) of level n-1 values with no trailing zeros.  The
main variable of a level-n polynomial is the list index.  A candidate gcd is
accepted only when it divides both inputs exactly, which together with the
size of the evaluation point makes it the true gcd (Char, Geddes and Gonnet).
Returns None when every evaluation point fails so the caller can fall back.
"""

from __future__ import annotations

from math import gcd, isqrt

_TRIES = 6


def _zero(lev: int):
    return 0 if lev == 0 else []


def _is_zero(f, lev: int) -> bool:
    return f == 0 if lev == 0 else not f


def _trim(f: list, lev: int) -> list:
    while f and _is_zero(f[-1], lev - 1):
        f.pop()
    return f


def _add(f, g, lev: int):
    if lev == 0:
        return f + g
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = _add(out[i], c, lev - 1)
    return _trim(out, lev)


def _neg(f, lev: int):
    return -f if lev == 0 else [_neg(c, lev - 1) for c in f]


def _ground_map(f, lev: int, fn):
    if lev == 0:
        return fn(f)
    return _trim([_ground_map(c, lev - 1, fn) for c in f], lev)


def _ground_gcd(f, lev: int) -> int:
    if lev == 0:
        return abs(f)
    g = 0
    for c in f:
        g = gcd(g, _ground_gcd(c, lev - 1))
        if g == 1:
            break
    return g


def _max_norm(f, lev: int) -> int:
    if lev == 0:
        return abs(f)
    return max((_max_norm(c, lev - 1) for c in f), default=0)


def _ground_lc(f, lev: int) -> int:
    while lev:
        f = f[-1]
        lev -= 1
    return f


def _mul_ground(f, c: int, lev: int):
    return _ground_map(f, lev, lambda x: x * c)


def _eval(f: list, x: int, lev: int):
    """Substitute the main variable of a level-lev polynomial by x."""
    acc = _zero(lev - 1)
    for c in reversed(f):
        acc = _add(_mul_ground(acc, x, lev - 1), c, lev - 1)
    return acc


def _interpolate(h, x: int, lev: int) -> list:
    """Read the base-x digits (symmetric range) of h as coefficients of a new
    main variable; h has level lev - 1, the result has level lev."""
    half = x // 2

    def sym(c):
        r = c % x
        return r - x if r > half else r

    out = []
    while not _is_zero(h, lev - 1):
        g = _ground_map(h, lev - 1, sym)
        out.append(g)
        h = _ground_map(_add(h, _neg(g, lev - 1), lev - 1), lev - 1, lambda c: c // x)
    if out and _ground_lc(out, lev) < 0:
        out = _neg(out, lev)
    return out


def _trydiv(f, g, lev: int):
    """Exact quotient f / g in Z[...], or None."""
    if lev == 0:
        if g == 0:
            raise ZeroDivisionError("division by zero")
        q, r = divmod(f, g)
        return None if r else q
    if not f:
        return []
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return None
    lg = g[-1]
    r = list(f)
    q = [_zero(lev - 1)] * (len(f) - dg)
    for d in range(len(f) - 1 - dg, -1, -1):
        c = r[d + dg]
        if _is_zero(c, lev - 1):
            continue
        t = _trydiv(c, lg, lev - 1)
        if t is None:
            return None
        q[d] = t
        for i, y in enumerate(g):
            r[d + i] = _add(r[d + i], _neg(_mul(t, y, lev - 1), lev - 1), lev - 1)
    if any(not _is_zero(c, lev - 1) for c in r[:dg]):
        return None
    return _trim(q, lev)


def _mul(f, g, lev: int):
    if lev == 0:
        return f * g
    if not f or not g:
        return []
    out = [_zero(lev - 1)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if _is_zero(a, lev - 1):
            continue
        for j, b in enumerate(g):
            if not _is_zero(b, lev - 1):
                out[i + j] = _add(out[i + j], _mul(a, b, lev - 1), lev - 1)
    return _trim(out, lev)


def _primitive(f, lev: int):
    c = _ground_gcd(f, lev)
    return f if c in (0, 1) else _ground_map(f, lev, lambda x: x // c)


def heu_gcd(f, g, lev: int):
    """(h, f / h, g / h) for nonzero f, g, or None if the heuristic fails."""
    if lev == 0:
        h = gcd(f, g)
        return h, f // h, g // h
    c = gcd(_ground_gcd(f, lev), _ground_gcd(g, lev))
    if c != 1:
        f = _ground_map(f, lev, lambda x: x // c)
        g = _ground_map(g, lev, lambda x: x // c)
    fn, gn = _max_norm(f, lev), _max_norm(g, lev)
    b = 2 * min(fn, gn) + 29
    # x above twice the smaller norm keeps the divisibility test conclusive
    x = max(b, 2 * min(fn // abs(_ground_lc(f, lev)), gn // abs(_ground_lc(g, lev))) + 2)
    for _ in range(_TRIES):
        ff = _eval(f, x, lev)
        gg = _eval(g, x, lev)
        if not _is_zero(ff, lev - 1) and not _is_zero(gg, lev - 1):
            sub = heu_gcd(ff, gg, lev - 1)
            if sub is not None:
                h, cff, cfg = sub
                hh = _primitive(_interpolate(h, x, lev), lev)
                if hh:
                    qf = _trydiv(f, hh, lev)
                    if qf is not None:
                        qg = _trydiv(g, hh, lev)
                        if qg is not None:
                            return _mul_ground(hh, c, lev), qf, qg
                cf = _interpolate(cff, x, lev)
                if cf:
                    hh = _trydiv(f, cf, lev)
                    if hh is not None:
                        qg = _trydiv(g, hh, lev)
                        if qg is not None:
                            return _mul_ground(hh, c, lev), cf, qg
                cg = _interpolate(cfg, x, lev)
                if cg:
                    hh = _trydiv(g, cg, lev)
                    if hh is not None:
                        qf = _trydiv(f, hh, lev)
                        if qf is not None:
                            return _mul_ground(hh, c, lev), qf, cg
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return None
