"""Modes u_n of arbitrary states, Virasoro vectors and the primary-vector test.

For a monomial u = a(-s) v the mode is expanded by the iterate formula with
l = -s (using (a(-1)|0>)_{-s} = a(-s)):

    (a(-s) v)_n = sum_j C(s+j-1, j) a(-s-j) v_{n+j}
                  - (-1)^s sum_j C(s+j-1, j) v_{n-s-j} a(j)

which is the generic formula after (-1)^j C(-s, j) = C(s+j-1, j).  Both sums
are finite on a homogeneous target because V(k,0) has no negative weights.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm

from .current_rewrite import _accumulate, _freeze, act
from .fock_states import (
    E,
    F,
    H,
    LevelParams,
    Monomial,
    ResourceLimitError,
    State,
    VACUUM_MONOMIAL,
    level,
)

#: mode() refuses inputs whose combined weight (the largest intermediate weight) exceeds this
MAX_WEIGHT = 24


class VirasoroKind(enum.Enum):
    AFF = "aff"
    GAMMA = "gamma"
    COSET = "coset"


def binom(l: int, j: int) -> Fraction:
    """C(l, j) = l(l-1)...(l-j+1)/j!, valid for negative l."""
    if j < 0:
        return Fraction(0)
    num = 1
    for i in range(j):
        num *= l - i
    den = 1
    for i in range(2, j + 1):
        den *= i
    return Fraction(num, den)


def _mono(hs=(), es=(), fs=()) -> Monomial:
    return Monomial.make(hs, es, fs)


def virasoro_vector(kind: VirasoroKind, p: LevelParams | int) -> State:
    k = level(p)
    if kind is VirasoroKind.AFF:
        c = Fraction(1, 2 * (k + 2))
        return State({
            _mono(hs=(2,)): -c,
            _mono(hs=(1, 1)): c / 2,
            _mono(es=(1,), fs=(1,)): 2 * c,
        })
    if kind is VirasoroKind.GAMMA:
        return State({_mono(hs=(1, 1)): Fraction(1, 4 * k)})
    if kind is VirasoroKind.COSET:
        c = Fraction(1, 2 * k * (k + 2))
        return State({
            _mono(hs=(2,)): -k * c,
            _mono(hs=(1, 1)): -c,
            _mono(es=(1,), fs=(1,)): 2 * k * c,
        })
    raise ValueError(f"unknown Virasoro kind {kind!r}")


def central_charge(kind: VirasoroKind, p: LevelParams | int) -> Fraction:
    k = level(p)
    return {
        VirasoroKind.AFF: Fraction(3 * k, k + 2),
        VirasoroKind.GAMMA: Fraction(1),
        VirasoroKind.COSET: Fraction(2 * (k - 1), k + 2),
    }[kind]


@lru_cache(maxsize=None)
def _mode_mono(u: Monomial, n: int, w: Monomial, k: int) -> tuple:
    wt_u = u.weight
    wt_w = w.weight
    if wt_u + wt_w - n - 1 < 0:
        return ()
    if u == VACUUM_MONOMIAL:
        return ((w, 1),) if n == -1 else ()
    if u.hs:
        g, s, v = H, u.hs[0], Monomial(u.hs[1:], u.es, u.fs)
    elif u.es:
        g, s, v = E, u.es[0], Monomial(u.hs, u.es[1:], u.fs)
    else:
        g, s, v = F, u.fs[0], Monomial(u.hs, u.es, u.fs[1:])
    if s == 1 and v == VACUUM_MONOMIAL:
        return act(g, n, w, k)

    out: dict = {}
    wt_v = wt_u - s
    # v_{n+j} w vanishes once n + j >= wt(v) + wt(w)
    top = wt_v + wt_w - n - 1
    for j in range(top + 1):
        inner = _mode_mono(v, n + j, w, k)
        if not inner:
            continue
        c = comb(s + j - 1, j)
        for mono, x in inner:
            _accumulate(out, act(g, -s - j, mono, k), c * x)
    # a(j) w vanishes once j > wt(w)
    sign = 1 if s % 2 else -1  # -(-1)^s
    for j in range(wt_w + 1):
        aw = act(g, j, w, k)
        if not aw:
            continue
        c = sign * comb(s + j - 1, j)
        for mono, x in aw:
            _accumulate(out, _mode_mono(v, n - s - j, mono, k), c * x)
    return _freeze(out)


def clear_caches() -> None:
    _mode_mono.cache_clear()


def mode(u: State, n: int, w: State, p: LevelParams | int, max_weight: int | None = None) -> State:
    """u_n w in canonical form."""
    k = level(p)
    limit = MAX_WEIGHT if max_weight is None else max_weight
    # clear denominators so the inner loop runs on ints, which is several
    # times faster than Fraction; divide once at the end
    du = lcm(*(c.denominator for _, c in u.items())) if u else 1
    dw = lcm(*(c.denominator for _, c in w.items())) if w else 1
    uterms = [(m, c.numerator * (du // c.denominator)) for m, c in u.items()]
    wterms = [(m, c.numerator * (dw // c.denominator)) for m, c in w.items()]
    out: dict = {}
    for mu, cu in uterms:
        wt_u = mu.weight
        for mw, cw in wterms:
            wt = wt_u + mw.weight - n - 1
            if wt < 0:
                continue
            if max(wt_u + mw.weight, wt) > limit:
                raise ResourceLimitError(
                    f"mode computation reaches weight {max(wt_u + mw.weight, wt)} above the limit {limit}"
                )
            c = cu * cw
            for mono, x in _mode_mono(mu, n, mw, k):
                y = out.get(mono, 0) + c * x
                if y:
                    out[mono] = y
                else:
                    del out[mono]
    d = du * dw
    return State._trusted({m: Fraction(c, d) for m, c in out.items()})


def virasoro_mode(kind: VirasoroKind, n: int, w: State, p: LevelParams | int) -> State:
    """L(n) w with L(n) = omega_{n+1} for the chosen Virasoro vector."""
    return mode(virasoro_vector(kind, p), n + 1, w, p)


def is_primary(u: State, expected_weight: int, p: LevelParams | int) -> bool:
    """Virasoro primary of the given weight for the coset Virasoro vector."""
    omega = virasoro_vector(VirasoroKind.COSET, p)
    if mode(omega, 2, u, p) or mode(omega, 3, u, p):
        return False
    return mode(omega, 1, u, p) == expected_weight * u
