"""Exact PBW-basis model of the level-k vacuum Weyl module V(k,0) for affine sl2.

A basis vector is a word

    h(-i1)...h(-ip) e(-j1)...e(-jq) f(-m1)...f(-mr) |0>

with every block non-increasing.  It has weight sum(i) + sum(j) + sum(m) and
h(0)-charge 2(q - r).  States are finite linear combinations of such words
with :class:`fractions.Fraction` coefficients.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

Scalar = Fraction
Number = Union[int, Fraction]

H, E, F = 0, 1, 2
LETTERS = "hef"


class ResourceLimitError(RuntimeError):
    """Raised when a computation exceeds a configured weight or step budget."""


@dataclass(frozen=True)
class LevelParams:
    k: int

    def __post_init__(self):
        if isinstance(self.k, bool) or not isinstance(self.k, int):
            raise TypeError(f"level must be an integer, got {self.k!r}")
        if self.k < 2:
            raise ValueError(f"level must satisfy k >= 2, got {self.k}")


def level(p: "LevelParams | int") -> int:
    """Validated integer level from either a LevelParams or a bare int."""
    if isinstance(p, LevelParams):
        return p.k
    return LevelParams(p).k


class Monomial(NamedTuple):
    """Canonical PBW word; each field lists the positive mode numbers of one letter."""

    hs: tuple = ()
    es: tuple = ()
    fs: tuple = ()

    @classmethod
    def make(cls, hs: Iterable[int] = (), es: Iterable[int] = (), fs: Iterable[int] = ()) -> "Monomial":
        blocks = []
        for block in (hs, es, fs):
            block = tuple(int(i) for i in block)
            if any(i < 1 for i in block):
                raise ValueError(f"mode numbers must be positive, got {block}")
            blocks.append(tuple(sorted(block, reverse=True)))
        return cls(*blocks)

    @property
    def weight(self) -> int:
        return sum(self.hs) + sum(self.es) + sum(self.fs)

    @property
    def charge(self) -> int:
        return 2 * (len(self.es) - len(self.fs))

    def __len__(self) -> int:  # number of letters
        return len(self.hs) + len(self.es) + len(self.fs)

    def letters(self) -> Iterator[tuple[int, int]]:
        """(generator, s) pairs of the word read left to right; s is minus the mode index."""
        for g, block in enumerate(self):
            for s in block:
                yield g, s

    def __str__(self) -> str:
        parts = []
        for g, block in enumerate(self):
            i = 0
            while i < len(block):
                j = i
                while j < len(block) and block[j] == block[i]:
                    j += 1
                power = "" if j - i == 1 else f"^{j - i}"
                parts.append(f"{LETTERS[g]}(-{block[i]}){power}")
                i = j
        return "".join(parts) + "|0>"


VACUUM_MONOMIAL = Monomial()


def grade(m: Monomial) -> tuple[int, int]:
    """(weight, charge) of a canonical monomial."""
    return m.weight, m.charge


def monomial_key(m: Monomial) -> tuple:
    # Longer blocks first, then larger parts first, block by block (h, e, f).
    key = []
    for block in m:
        key.append(-len(block))
        key.append(tuple(-i for i in block))
    return tuple(key)


def _as_fraction(c: Number) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact (int/Fraction), got {type(c).__name__}")


class State:
    """Immutable element of V(k,0): a finite map Monomial -> Fraction without zeros."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if not isinstance(m, Monomial):
                    raise TypeError(f"State keys must be Monomial, got {type(m).__name__}")
                c = _as_fraction(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, terms: dict) -> "State":
        # terms already pruned and Fraction-valued
        s = cls.__new__(cls)
        s._terms = terms
        s._hash = None
        return s

    @classmethod
    def basis(cls, m: Monomial, coeff: Number = 1) -> "State":
        return cls({m: coeff})

    @classmethod
    def vacuum(cls) -> "State":
        return cls({VACUUM_MONOMIAL: 1})

    @classmethod
    def zero(cls) -> "State":
        return cls._trusted({})

    # -- mapping-like access -------------------------------------------------
    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coeff(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "State") -> "State":
        if not isinstance(other, State):
            return NotImplemented
        return combine(1, self, 1, other)

    def __sub__(self, other: "State") -> "State":
        if not isinstance(other, State):
            return NotImplemented
        return combine(1, self, -1, other)

    def __neg__(self) -> "State":
        return State._trusted({m: -c for m, c in self._terms.items()})

    def __mul__(self, c: Number) -> "State":
        if isinstance(c, State):
            return NotImplemented
        c = _as_fraction(c)
        if not c:
            return State.zero()
        return State._trusted({m: c * x for m, x in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- grading -------------------------------------------------------------
    def grades(self) -> set[tuple[int, int]]:
        return {grade(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    @property
    def weight(self) -> int:
        weights = {m.weight for m in self._terms}
        if len(weights) != 1:
            raise ValueError("weight is only defined for nonzero weight-homogeneous states")
        return weights.pop()

    @property
    def charge(self) -> int:
        charges = {m.charge for m in self._terms}
        if len(charges) != 1:
            raise ValueError("charge is only defined for nonzero charge-homogeneous states")
        return charges.pop()

    def components(self) -> dict[tuple[int, int], "State"]:
        """Split into homogeneous (weight, charge) components."""
        out: dict[tuple[int, int], dict] = {}
        for m, c in self._terms.items():
            out.setdefault(grade(m), {})[m] = c
        return {g: State._trusted(t) for g, t in out.items()}

    # -- display / serialization ----------------------------------------------
    def sorted_items(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda mc: (mc[0].weight, -mc[0].charge, monomial_key(mc[0])))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_items()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = str(m) if a == 1 else f"{a} {m}"
            if i == 0:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f"{sign} {body}")
        return " ".join(out)

    def __repr__(self) -> str:
        return f"State({self})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"h": list(m.hs), "e": list(m.es), "f": list(m.fs), "coeff": _frac_str(c)}
                for m, c in self.sorted_items()
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "State":
        terms: dict[Monomial, Fraction] = {}
        for t in data["terms"]:
            m = Monomial.make(t.get("h", ()), t.get("e", ()), t.get("f", ()))
            terms[m] = terms.get(m, Fraction(0)) + Fraction(t["coeff"])
        return cls(terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "State":
        return cls.from_json(json.loads(text))


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def frac_str(c: Number) -> str:
    """Exact 'p/q' rendering used in every JSON payload."""
    return _frac_str(_as_fraction(c))


def combine(a: Number, u: State, b: Number, v: State) -> State:
    """a*u + b*v with zero coefficients pruned."""
    a = _as_fraction(a)
    b = _as_fraction(b)
    out = {}
    if a:
        for m, c in u.items():
            out[m] = a * c
    if b:
        for m, c in v.items():
            x = out.get(m, 0) + b * c
            if x:
                out[m] = x
            else:
                out.pop(m, None)
    return State._trusted(out)


def linear_combination(pairs: Iterable[tuple[Number, State]]) -> State:
    out: dict[Monomial, Fraction] = {}
    for a, u in pairs:
        a = _as_fraction(a)
        if not a:
            continue
        for m, c in u.items():
            x = out.get(m, 0) + a * c
            if x:
                out[m] = x
            else:
                out.pop(m, None)
    return State._trusted(out)


# -- enumeration ----------------------------------------------------------------

@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None, length: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Partitions of n as non-increasing tuples, largest parts first.

    With ``length`` given, only partitions with exactly that many parts.
    """
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),) if length in (None, 0) else ()
    if length == 0:
        return ()
    out = []
    for first in range(min(n, max_part), 0, -1):
        rest_len = None if length is None else length - 1
        for rest in partitions(n - first, first, rest_len):
            out.append((first,) + rest)
    return tuple(out)


def partition_count(n: int) -> int:
    return len(partitions(n))


@lru_cache(maxsize=None)
def _enumerate(n: int, charge: int) -> tuple[Monomial, ...]:
    if n < 0 or charge % 2:
        return ()
    out = []
    d = charge // 2
    for wh in range(n + 1):
        for hs in partitions(wh):
            rest = n - wh
            for q in range(rest + 1):
                r = q - d
                if r < 0:
                    continue
                for we in range(rest + 1):
                    for es in partitions(we, None, q):
                        for fs in partitions(rest - we, None, r):
                            out.append(Monomial(hs, es, fs))
    out.sort(key=monomial_key)
    return tuple(out)


def enumerate_monomials(n: int, charge: int) -> list[Monomial]:
    """All canonical monomials of weight n and charge ``charge`` in the fixed order."""
    if n < 0:
        raise ValueError("weight must be non-negative")
    if charge % 2:
        raise ValueError("charge must be even")
    return list(_enumerate(n, charge))


def charges_at_weight(n: int) -> range:
    """Every charge that occurs at weight n (|charge| <= 2n, even)."""
    return range(-2 * n, 2 * n + 1, 2)
