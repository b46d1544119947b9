"""Normal ordering of current modes a(n), a in {h, e, f}, acting on V(k,0).

The action is computed with the affine commutation relation

    [a(m), b(n)] = [a, b](m + n) + m <a, b> delta_{m+n,0} k

and the vacuum annihilation rule a(n)|0> = 0 for n >= 0.  Results on single
monomials are memoized with integer coefficients; :class:`State` arithmetic is
only done at the outer layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .fock_states import (
    E,
    F,
    H,
    LETTERS,
    LevelParams,
    Monomial,
    State,
    VACUUM_MONOMIAL,
    level,
)

# [x, y] for basis letters, as {letter: coefficient}
BRACKET = {
    (H, E): {E: 2},
    (E, H): {E: -2},
    (H, F): {F: -2},
    (F, H): {F: 2},
    (E, F): {H: 1},
    (F, E): {H: -1},
}
# normalized invariant form: <h,h> = 2, <e,f> = <f,e> = 1
FORM = {(H, H): 2, (E, F): 1, (F, E): 1}
CHARGE_SHIFT = {H: 0, E: 2, F: -2}


@dataclass(frozen=True)
class ModeSymbol:
    """The operator a(n) for a current a in {h, e, f}."""

    generator: str
    index: int

    def __post_init__(self):
        if self.generator not in LETTERS:
            raise ValueError(f"generator must be one of 'h', 'e', 'f', got {self.generator!r}")
        if isinstance(self.index, bool) or not isinstance(self.index, int):
            raise TypeError("mode index must be an integer")

    @property
    def letter(self) -> int:
        return LETTERS.index(self.generator)

    def __str__(self) -> str:
        return f"{self.generator}({self.index})"


def h(n: int) -> ModeSymbol:
    return ModeSymbol("h", n)


def e(n: int) -> ModeSymbol:
    return ModeSymbol("e", n)


def f(n: int) -> ModeSymbol:
    return ModeSymbol("f", n)


def bracket(a: ModeSymbol, b: ModeSymbol) -> dict[ModeSymbol, int]:
    """[a, b] in sl2 at index a.index + b.index, without the central term."""
    n = a.index + b.index
    return {ModeSymbol(LETTERS[g], n): c for g, c in BRACKET.get((a.letter, b.letter), {}).items()}


def central_term(a: ModeSymbol, b: ModeSymbol, k: int) -> int:
    """The scalar m <a,b> delta_{m+n,0} k in [a(m), b(n)]."""
    if a.index + b.index != 0:
        return 0
    return a.index * FORM.get((a.letter, b.letter), 0) * k


# -- monomial-level engine --------------------------------------------------------

def _first(m: Monomial) -> tuple[int, int, Monomial]:
    if m.hs:
        return H, m.hs[0], Monomial(m.hs[1:], m.es, m.fs)
    if m.es:
        return E, m.es[0], Monomial(m.hs, m.es[1:], m.fs)
    return F, m.fs[0], Monomial(m.hs, m.es, m.fs[1:])


def _first_block(m: Monomial) -> int:
    if m.hs:
        return H
    if m.es:
        return E
    if m.fs:
        return F
    return 3


def _insert(g: int, s: int, m: Monomial) -> Monomial:
    # Only valid when every letter of m lies in block g or later.
    block = m[g]
    i = 0
    while i < len(block) and block[i] >= s:
        i += 1
    new = block[:i] + (s,) + block[i:]
    if g == H:
        return Monomial(new, m.es, m.fs)
    if g == E:
        return Monomial(m.hs, new, m.fs)
    return Monomial(m.hs, m.es, new)


def _accumulate(out: dict, pairs, scale: int) -> None:
    for mono, c in pairs:
        x = out.get(mono, 0) + scale * c
        if x:
            out[mono] = x
        else:
            del out[mono]


def _freeze(out: dict) -> tuple:
    return tuple(out.items())


@lru_cache(maxsize=None)
def _create(g: int, s: int, m: Monomial) -> tuple:
    """Canonical form of g(-s) m for s >= 1; independent of the level."""
    first = _first_block(m)
    if g <= first:
        # g(-s) commutes with every letter of its own block; earlier blocks are empty.
        return ((_insert(g, s, m), 1),)
    y, t, rest = _first(m)
    out: dict = {}
    # g(-s) y(-t) rest = y(-t) g(-s) rest + [g, y](-s-t) rest; no central term since s+t > 0
    for mono, c in _create(g, s, rest):
        _accumulate(out, _create(y, t, mono), c)
    for gg, cc in BRACKET[(g, y)].items():
        _accumulate(out, _create(gg, s + t, rest), cc)
    return _freeze(out)


@lru_cache(maxsize=None)
def _annihilate(g: int, n: int, m: Monomial, k: int) -> tuple:
    """Canonical form of g(n) m for n >= 0."""
    if not m.hs and not m.es and not m.fs:
        return ()
    y, t, rest = _first(m)
    out: dict = {}
    for mono, c in _annihilate(g, n, rest, k):
        _accumulate(out, _create(y, t, mono), c)
    idx = n - t
    for gg, cc in BRACKET.get((g, y), {}).items():
        sub = _create(gg, -idx, rest) if idx < 0 else _annihilate(gg, idx, rest, k)
        _accumulate(out, sub, cc)
    if idx == 0:
        central = n * FORM.get((g, y), 0) * k
        if central:
            _accumulate(out, ((rest, 1),), central)
    return _freeze(out)


def act(g: int, n: int, m: Monomial, k: int) -> tuple:
    """g(n) applied to a monomial; tuple of (Monomial, int) pairs."""
    if n < 0:
        return _create(g, -n, m)
    return _annihilate(g, n, m, k)


def clear_caches() -> None:
    _create.cache_clear()
    _annihilate.cache_clear()


# -- State-level operations -----------------------------------------------------

def _apply_int_pairs(state: State, fn) -> State:
    out: dict = {}
    for m, c in state.items():
        for mono, x in fn(m):
            v = out.get(mono, 0) + c * x
            if v:
                out[mono] = v
            else:
                del out[mono]
    return State._trusted(out)


def apply_mode(a: ModeSymbol, v: State, p: LevelParams | int) -> State:
    """The canonical form of a(n) v."""
    k = level(p)
    g, n = a.letter, a.index
    return _apply_int_pairs(v, lambda m: act(g, n, m, k))


def apply_word(word: Sequence[ModeSymbol], v: State, p: LevelParams | int) -> State:
    """Apply a word of modes to v, rightmost letter first."""
    k = level(p)
    for a in reversed(list(word)):
        if not v:
            break
        v = apply_mode(a, v, k)
    return v


def power(a: ModeSymbol, times: int) -> list[ModeSymbol]:
    return [a] * times


def monomial_word(m: Monomial) -> list[ModeSymbol]:
    """The mode word that creates m from the vacuum."""
    return [ModeSymbol(LETTERS[g], -s) for g, s in m.letters()]


def from_word(word: Iterable[ModeSymbol], p: LevelParams | int, coeff=1) -> State:
    """Normal-ordered value of the word applied to the vacuum."""
    return apply_word(list(word), State.vacuum(), p) * coeff


@lru_cache(maxsize=None)
def _theta_monomial(m: Monomial) -> tuple:
    # h -> -h, e -> f, f -> e, then renormal-order the swapped word on the vacuum.
    swapped = [(H, s) for s in m.hs] + [(F, s) for s in m.es] + [(E, s) for s in m.fs]
    pairs = ((VACUUM_MONOMIAL, 1),)
    for g, s in reversed(swapped):
        out: dict = {}
        for mono, c in pairs:
            _accumulate(out, _create(g, s, mono), c)
        pairs = _freeze(out)
    sign = -1 if len(m.hs) % 2 else 1
    return tuple((mono, sign * c) for mono, c in pairs)


def theta(v: State) -> State:
    """The order-two automorphism induced by h -> -h, e <-> f."""
    return _apply_int_pairs(v, _theta_monomial)


def theta_symbol(a: ModeSymbol) -> tuple[int, ModeSymbol]:
    """(sign, symbol) with theta a(n) theta^{-1} = sign * symbol."""
    if a.generator == "h":
        return -1, a
    return 1, ModeSymbol("f" if a.generator == "e" else "e", a.index)


__all__ = [
    "ModeSymbol",
    "h",
    "e",
    "f",
    "bracket",
    "central_term",
    "apply_mode",
    "apply_word",
    "from_word",
    "monomial_word",
    "power",
    "theta",
    "theta_symbol",
    "act",
    "clear_caches",
    "CHARGE_SHIFT",
]
