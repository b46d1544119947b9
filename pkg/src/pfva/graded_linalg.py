"""Exact linear algebra on (weight, charge)-graded subspaces of V(k,0).

Subspaces are stored as reduced row-echelon bases per grade, pivoting on the
first monomial in the fixed monomial order.  Everything is over Fraction.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

from .current_rewrite import ModeSymbol, apply_mode, h
from .fock_states import (
    LevelParams,
    Monomial,
    ResourceLimitError,
    State,
    enumerate_monomials,
    level,
    monomial_key,
)
from .vertex_modes import VirasoroKind, mode, virasoro_vector

Grade = tuple  # (weight, charge)
OperatorSpec = Union[ModeSymbol, tuple, Callable[[State], State]]


class _Echelon:
    """Incremental reduced row echelon form for one grade."""

    __slots__ = ("rows",)

    def __init__(self):
        self.rows: dict[Monomial, dict] = {}

    def reduce(self, vec: Mapping) -> dict:
        out = dict(vec)
        for p, row in self.rows.items():
            c = out.get(p)
            if c:
                for m, x in row.items():
                    y = out.get(m, 0) - c * x
                    if y:
                        out[m] = y
                    else:
                        del out[m]
        return out

    def insert(self, vec: Mapping) -> dict | None:
        """Add vec to the span; returns its reduced form when the span grew, else None."""
        r = self.reduce(vec)
        if not r:
            return None
        reduced = dict(r)
        pivot = min(r, key=monomial_key)
        scale = r[pivot]
        r = {m: x / scale for m, x in r.items()}
        for row in self.rows.values():
            c = row.get(pivot)
            if c:
                for m, x in r.items():
                    y = row.get(m, 0) - c * x
                    if y:
                        row[m] = y
                    else:
                        del row[m]
        self.rows[pivot] = r
        return reduced

    def states(self) -> list[State]:
        return [State._trusted(dict(self.rows[p])) for p in sorted(self.rows, key=monomial_key)]


@dataclass(frozen=True)
class GradedBasis:
    """Echelon bases of a graded subspace, one entry per (weight, charge).

    ``spaces`` only lists nonzero grades; ``cutoff`` bounds the weights covered.
    """

    cutoff: int
    spaces: Mapping[Grade, tuple] = field(default_factory=dict)
    k: int | None = None

    def dim(self, n: int, charge: int | None = None) -> int:
        return sum(len(v) for (w, c), v in self.spaces.items() if w == n and (charge is None or c == charge))

    def dims(self, charge: int | None = None) -> dict[int, int]:
        return {n: self.dim(n, charge) for n in range(self.cutoff + 1)}

    def dims_list(self, charge: int | None = None) -> list[int]:
        return [self.dim(n, charge) for n in range(self.cutoff + 1)]

    def vectors(self, n: int | None = None, charge: int | None = None) -> list[State]:
        out = []
        for (w, c) in sorted(self.spaces):
            if (n is None or w == n) and (charge is None or c == charge):
                out.extend(self.spaces[(w, c)])
        return out

    def grades(self) -> list[Grade]:
        return sorted(self.spaces)

    def restrict(self, charge: int | None = None, max_weight: int | None = None) -> "GradedBasis":
        cut = self.cutoff if max_weight is None else min(self.cutoff, max_weight)
        spaces = {
            g: v for g, v in self.spaces.items() if g[0] <= cut and (charge is None or g[1] == charge)
        }
        return GradedBasis(cut, spaces, self.k)

    def __len__(self) -> int:
        return sum(len(v) for v in self.spaces.values())

    def _echelon(self, g: Grade) -> _Echelon:
        ech = _Echelon()
        for s in self.spaces.get(g, ()):
            p = min(s.monomials(), key=monomial_key)
            ech.rows[p] = dict(s.items())
        return ech

    # -- serialization --------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "k": self.k,
            "cutoff": self.cutoff,
            "dims": {str(n): d for n, d in self.dims().items()},
            "vectors": [v.to_json() for v in self.vectors()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GradedBasis":
        spaces: dict[Grade, list] = {}
        for t in data["vectors"]:
            s = State.from_json(t)
            g = next(iter(s.grades()))
            spaces.setdefault(g, []).append(s)
        for g in spaces:
            spaces[g].sort(key=lambda s: monomial_key(min(s.monomials(), key=monomial_key)))
        basis = cls(int(data["cutoff"]), {g: tuple(v) for g, v in spaces.items()}, data.get("k"))
        expected = {int(n): d for n, d in data.get("dims", {}).items()}
        if expected and expected != basis.dims():
            raise ValueError("serialized dims do not match the stored vectors")
        return basis

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "GradedBasis":
        return cls.from_json(json.loads(text))


class BasisBuilder:
    """Mutable accumulator producing a GradedBasis; inserts report dimension growth."""

    def __init__(self, cutoff: int, k: int | None = None):
        self.cutoff = cutoff
        self.k = k
        self._ech: dict[Grade, _Echelon] = {}

    @classmethod
    def from_basis(cls, basis: GradedBasis) -> "BasisBuilder":
        b = cls(basis.cutoff, basis.k)
        for g in basis.spaces:
            b._ech[g] = basis._echelon(g)
        return b

    def add(self, v: State) -> list[State]:
        """Insert every homogeneous component of v.

        Returns, for each component that grew the span, its remainder modulo the
        previous span rescaled to coprime integer coefficients.
        """
        grown = []
        for g, comp in v.components().items():
            if g[0] > self.cutoff:
                continue
            ech = self._ech.setdefault(g, _Echelon())
            r = ech.insert(dict(comp.items()))
            if r is not None:
                grown.append(State._trusted(primitive(r)))
        return grown

    def add_homogeneous(self, v: State) -> bool:
        if not v:
            return False
        if not v.is_homogeneous():
            raise ValueError("expected a homogeneous state")
        return bool(self.add(v))

    def contains(self, v: State) -> bool:
        for g, comp in v.components().items():
            ech = self._ech.get(g)
            if ech is None or ech.reduce(dict(comp.items())):
                return False
        return True

    def dim(self, n: int) -> int:
        return sum(len(e.rows) for (w, _), e in self._ech.items() if w == n)

    def build(self) -> GradedBasis:
        spaces = {g: tuple(e.states()) for g, e in self._ech.items() if e.rows}
        return GradedBasis(self.cutoff, spaces, self.k)


def primitive(vec: Mapping) -> dict:
    """Rescale a nonzero rational vector to coprime integer coefficients (as Fractions)."""
    den = 1
    for x in vec.values():
        den = den * x.denominator // math.gcd(den, x.denominator)
    nums = [int(x * den) for x in vec.values()]
    g = 0
    for x in nums:
        g = math.gcd(g, x)
    return {m: Fraction(x // g) for m, x in zip(vec, nums)}


def echelonize(vectors: Iterable[State], cutoff: int | None = None, k: int | None = None) -> GradedBasis:
    """Reduced echelon basis of the span of homogeneous states."""
    vectors = list(vectors)
    for v in vectors:
        if not v.is_homogeneous():
            raise ValueError(f"echelonize needs homogeneous input, got {v}")
    if cutoff is None:
        cutoff = max((v.weight for v in vectors if v), default=0)
    b = BasisBuilder(cutoff, k)
    for v in vectors:
        if v and v.weight <= cutoff:
            b.add(v)
    return b.build()


def contains(B: GradedBasis, v: State) -> tuple[bool, list[Fraction] | None]:
    """Exact membership of a homogeneous v; coordinates are w.r.t. B's echelon vectors in that grade."""
    if not v:
        return True, []
    if not v.is_homogeneous():
        raise ValueError("contains needs a homogeneous state")
    g = next(iter(v.grades()))
    ech = B._echelon(g)
    if ech.reduce(dict(v.items())):
        return False, None
    coords = []
    for s in B.spaces.get(g, ()):
        p = min(s.monomials(), key=monomial_key)
        coords.append(v.coeff(p))
    return True, coords


def _operator(op: OperatorSpec, k: int) -> Callable[[State], State]:
    if isinstance(op, ModeSymbol):
        return lambda v: apply_mode(op, v, k)
    if isinstance(op, tuple) and len(op) == 2 and isinstance(op[0], State):
        u, n = op
        return lambda v: mode(u, n, v, k)
    if callable(op):
        return op
    raise TypeError(f"not an operator spec: {op!r}")


def nullspace(images: Sequence[Mapping]) -> list[list[Fraction]]:
    """Basis of {c : sum_i c_i images[i] = 0} for sparse vectors over any hashable index."""
    d = len(images)
    pivots: dict = {}  # index -> (order, reduced image, combination)
    kernel = []
    for i, img in enumerate(images):
        vec = dict(img)
        combo = {i: Fraction(1)}
        while vec:
            # oldest pivot first: a stored row only contains pivots created after it
            hits = [q for q in vec if q in pivots]
            if not hits:
                break
            p = min(hits, key=lambda q: pivots[q][0])
            c = vec[p]
            _, pv, pc = pivots[p]
            for m, x in pv.items():
                y = vec.get(m, 0) - c * x
                if y:
                    vec[m] = y
                else:
                    del vec[m]
            for j, x in pc.items():
                y = combo.get(j, 0) - c * x
                if y:
                    combo[j] = y
                else:
                    del combo[j]
        if vec:
            p = next(iter(vec))
            s = vec[p]
            pivots[p] = (len(pivots), {m: x / s for m, x in vec.items()}, {j: x / s for j, x in combo.items()})
        else:
            kernel.append([combo.get(j, Fraction(0)) for j in range(d)])
    return kernel


def kernel(ops: Sequence[OperatorSpec], domain: GradedBasis, p: LevelParams | int) -> GradedBasis:
    """Per grade, the joint kernel of the operators restricted to the domain."""
    k = level(p)
    fns = [_operator(op, k) for op in ops]
    builder = BasisBuilder(domain.cutoff, k)
    for g in domain.grades():
        vecs = domain.spaces[g]
        images = []
        for v in vecs:
            img = {}
            for i, fn in enumerate(fns):
                for m, c in fn(v).items():
                    img[(i, m)] = c
            images.append(img)
        for combo in nullspace(images):
            builder.add(_combo(combo, vecs))
    return builder.build()


def _combo(coeffs: Sequence[Fraction], vecs: Sequence[State]) -> State:
    out: dict = {}
    for c, v in zip(coeffs, vecs):
        if not c:
            continue
        for m, x in v.items():
            y = out.get(m, 0) + c * x
            if y:
                out[m] = y
            else:
                del out[m]
    return State._trusted(out)


def weight_space(n: int, charge: int, p: LevelParams | int) -> GradedBasis:
    """Monomial basis of V(k,0)(charge) at weight n."""
    k = level(p)
    monos = enumerate_monomials(n, charge)
    spaces = {(n, charge): tuple(State._trusted({m: Fraction(1)}) for m in monos)} if monos else {}
    return GradedBasis(n, spaces, k)


def graded_space(cutoff: int, p: LevelParams | int, charges: Iterable[int] | None = (0,)) -> GradedBasis:
    """Monomial basis of V(k,0) up to the cutoff, restricted to the given charges (None = all)."""
    k = level(p)
    spaces = {}
    for n in range(cutoff + 1):
        cs = range(-2 * n, 2 * n + 1, 2) if charges is None else charges
        for c in cs:
            monos = enumerate_monomials(n, c)
            if monos:
                spaces[(n, c)] = tuple(State._trusted({m: Fraction(1)}) for m in monos)
    return GradedBasis(cutoff, spaces, k)


def commutant_space(n: int, charge: int, p: LevelParams | int) -> GradedBasis:
    """N_charge at weight n: vectors killed by h(m), m >= 1 (h(0) acts by the charge)."""
    k = level(p)
    return kernel([h(m) for m in range(1, n + 1)], weight_space(n, charge, k), k)


def commutant_space_virasoro(n: int, charge: int, p: LevelParams | int) -> GradedBasis:
    """Same space as commutant_space, computed as the kernel of (omega_gamma)_0 - (charge/2k) h(-1)."""
    k = level(p)
    og = virasoro_vector(VirasoroKind.GAMMA, k)
    shift = Fraction(charge, 2 * k)

    def op(v: State) -> State:
        out = mode(og, 0, v, k)
        if shift:
            out = out - shift * apply_mode(h(-1), v, k)
        return out

    return kernel([op], weight_space(n, charge, k), k)


def union(*bases: GradedBasis) -> GradedBasis:
    cutoff = max(b.cutoff for b in bases)
    builder = BasisBuilder(cutoff, bases[0].k)
    for b in bases:
        for v in b.vectors():
            builder.add(v)
    return builder.build()


def intersect(A: GradedBasis, B: GradedBasis) -> GradedBasis:
    """Per grade, span(A) cap span(B)."""
    cutoff = min(A.cutoff, B.cutoff)
    builder = BasisBuilder(cutoff, A.k)
    for g in A.grades():
        if g[0] > cutoff or g not in B.spaces:
            continue
        avecs, bvecs = A.spaces[g], B.spaces[g]
        images = [dict(v.items()) for v in avecs] + [{m: -x for m, x in v.items()} for v in bvecs]
        for combo in nullspace(images):
            builder.add(_combo(combo[: len(avecs)], avecs))
    return builder.build()


def same_span(A: GradedBasis, B: GradedBasis) -> bool:
    """Equal dimensions and mutual containment at every grade."""
    if A.dims() != B.dims():
        return False
    return all(contains(B, v)[0] for v in A.vectors()) and all(contains(A, v)[0] for v in B.vectors())


def _mode_range(wu: int, wv: int, cutoff: int) -> range:
    # result weight wu + wv - n - 1 must lie in [0, cutoff]
    return range(wu + wv - 1 - cutoff, wu + wv)


def generated_subalgebra(
    gens: Sequence[State],
    cutoff: int,
    p: LevelParams | int,
    step_budget: int | None = None,
) -> GradedBasis:
    """Span, up to the cutoff, of all iterated modes of the generators and the vacuum.

    Work-list closure: every vector that enlarged the span is paired (in both
    orders, all admissible n) with every vector accepted before it, so on exit
    the span is closed under u_n v for all of its basis vectors.
    """
    k = level(p)
    builder = BasisBuilder(cutoff, k)
    accepted: list[State] = []
    for g in [State.vacuum(), *gens]:
        if not g:
            continue
        if not g.is_homogeneous():
            raise ValueError("generators must be homogeneous")
        if g.weight > cutoff:
            raise ValueError(f"generator weight {g.weight} exceeds cutoff {cutoff}")
        accepted.extend(builder.add(g))
    steps = 0
    j = 0
    while j < len(accepted):
        x = accepted[j]
        wx = x.weight
        for i in range(j + 1):
            y = accepted[i]
            wy = y.weight
            pairs = [(x, y)] if i == j else [(x, y), (y, x)]
            for u, v in pairs:
                for n in _mode_range(wx, wy, cutoff):
                    steps += 1
                    if step_budget is not None and steps > step_budget:
                        raise ResourceLimitError(f"generated_subalgebra exceeded {step_budget} products")
                    r = mode(u, n, v, k)
                    if r:
                        accepted.extend(builder.add(r))
        j += 1
    return builder.build()


def current_closure(
    vectors: Sequence[State],
    cutoff: int,
    p: LevelParams | int,
    step_budget: int | None = None,
) -> GradedBasis:
    """Smallest subspace (weights <= cutoff) containing the vectors and stable under every a(n).

    For the affine vertex algebra this is the ideal generated by the vectors:
    the currents generate V(k,0), and any word of current modes can be
    reordered so no intermediate weight exceeds the final one.
    """
    k = level(p)
    builder = BasisBuilder(cutoff, k)
    queue: list[State] = []
    for v in vectors:
        if v:
            queue.extend(builder.add(v))
    steps = 0
    i = 0
    while i < len(queue):
        v = queue[i]
        wt = v.weight
        for g in "hef":
            for n in range(wt - cutoff, wt + 1):
                steps += 1
                if step_budget is not None and steps > step_budget:
                    raise ResourceLimitError(f"current_closure exceeded {step_budget} steps")
                r = apply_mode(ModeSymbol(g, n), v, k)
                if r:
                    queue.extend(builder.add(r))
        i += 1
    return builder.build()


def generated_ideal(
    x: State,
    ambient: GradedBasis,
    cutoff: int,
    p: LevelParams | int,
    charges: Iterable[int] | None = None,
    step_budget: int | None = None,
    audit: bool = False,
) -> GradedBasis:
    """Span of u_n x over the ambient basis vectors u, restricted to weights <= cutoff.

    ``charges`` optionally keeps only results of those charges (ambient vectors
    that cannot produce them are skipped).  With ``audit`` the result is checked
    to be closed under the ambient modes and an AssertionError reports growth.
    """
    k = level(p)
    builder = BasisBuilder(cutoff, k)
    if not x:
        return builder.build()
    if not x.is_homogeneous():
        raise ValueError("ideal generator must be homogeneous")
    wx, cx = x.weight, x.charge
    keep = None if charges is None else set(charges)
    steps = 0
    for (wu, cu), vecs in sorted(ambient.spaces.items()):
        if keep is not None and cu + cx not in keep:
            continue
        for u in vecs:
            for n in _mode_range(wu, wx, cutoff):
                steps += 1
                if step_budget is not None and steps > step_budget:
                    raise ResourceLimitError(f"generated_ideal exceeded {step_budget} products")
                r = mode(u, n, x, k)
                if r:
                    builder.add(r)
    ideal = builder.build()
    if audit:
        growth = audit_ideal(ideal, ambient, cutoff, k)
        if any(growth.values()):
            raise AssertionError(f"ideal not closed after one pass, growth per weight {growth}")
    return ideal


def audit_ideal(ideal: GradedBasis, ambient: GradedBasis, cutoff: int, p: LevelParams | int) -> dict[int, int]:
    """Dimension added per weight by applying every ambient mode to every ideal vector."""
    k = level(p)
    builder = BasisBuilder.from_basis(ideal)
    before = ideal.dims()
    for (wu, _), uvecs in sorted(ambient.spaces.items()):
        for u in uvecs:
            for (wy, _), yvecs in sorted(ideal.spaces.items()):
                for y in yvecs:
                    for n in _mode_range(wu, wy, cutoff):
                        r = mode(u, n, y, k)
                        if r:
                            builder.add(r)
    after = builder.build().dims()
    return {n: after[n] - before[n] for n in range(cutoff + 1)}
