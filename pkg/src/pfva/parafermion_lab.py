"""Named vectors of the parafermion construction and finite-cutoff structure checks.

Every check is a degree-by-degree verification up to a weight cutoff; a
passing report confirms the statement only in the weights it covers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from .current_rewrite import apply_word, e, f, from_word, h, theta
from .fock_states import (
    LevelParams,
    Monomial,
    State,
    enumerate_monomials,
    frac_str,
    level,
    partitions,
)
from .graded_linalg import (
    BasisBuilder,
    GradedBasis,
    audit_ideal,
    commutant_space,
    contains,
    current_closure,
    generated_ideal,
    generated_subalgebra,
    graded_space,
    intersect,
    same_span,
    union,
)
from .vertex_modes import VirasoroKind, mode, virasoro_vector

DEFAULT_CUTOFF = 6


@dataclass
class CheckReport:
    check: str
    k: int
    cutoff: int | None
    passed: bool
    dims: dict = field(default_factory=dict)
    witness: State | None = None
    scalars: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    skipped: bool = False

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "k": self.k,
            "cutoff": self.cutoff,
            "pass": self.passed,
            "skipped": self.skipped,
            "dims": {name: {str(n): d for n, d in table.items()} for name, table in self.dims.items()},
            "witness": None if self.witness is None else self.witness.to_json(),
            "scalars": {name: frac_str(v) for name, v in self.scalars.items()},
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        status = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        cut = "" if self.cutoff is None else f" cutoff={self.cutoff}"
        return f"[{status}] {self.check} k={self.k}{cut}"


# -- named vectors -----------------------------------------------------------------

def _m(hs=(), es=(), fs=()) -> Monomial:
    return Monomial.make(hs, es, fs)


# (coefficient as a polynomial in k, monomial); printed normalization of the W vectors
_W3 = [
    (lambda k: k**2, _m(hs=(3,))),
    (lambda k: 3 * k, _m(hs=(2, 1))),
    (lambda k: 2, _m(hs=(1, 1, 1))),
    (lambda k: -6 * k, _m(hs=(1,), es=(1,), fs=(1,))),
    (lambda k: 3 * k**2, _m(es=(2,), fs=(1,))),
    (lambda k: -3 * k**2, _m(es=(1,), fs=(2,))),
]

_W4 = [
    (lambda k: -2 * k**2 * (k**2 + k + 1), _m(hs=(4,))),
    (lambda k: -8 * k * (k**2 + k + 1), _m(hs=(3, 1))),
    (lambda k: -k * (5 * k**2 - 6), _m(hs=(2, 2))),
    (lambda k: -2 * k * (11 * k + 6), _m(hs=(2, 1, 1))),
    (lambda k: -(11 * k + 6), _m(hs=(1, 1, 1, 1))),
    (lambda k: 4 * k**2 * (6 * k - 5), _m(hs=(2,), es=(1,), fs=(1,))),
    (lambda k: 4 * k * (11 * k + 6), _m(hs=(1, 1), es=(1,), fs=(1,))),
    (lambda k: -4 * k**2 * (5 * k + 11), _m(hs=(1,), es=(2,), fs=(1,))),
    (lambda k: 4 * k**2 * (5 * k + 11), _m(hs=(1,), es=(1,), fs=(2,))),
    (lambda k: 8 * k**2 * (k - 3) * (k - 2), _m(es=(3,), fs=(1,))),
    (lambda k: -4 * k**2 * (3 * k**2 - 3 * k + 8), _m(es=(2,), fs=(2,))),
    (lambda k: -2 * k**2 * (6 * k - 5), _m(es=(1, 1), fs=(1, 1))),
    (lambda k: 8 * k**2 * (k**2 + k + 1), _m(es=(1,), fs=(3,))),
]

_W5 = [
    (lambda k: -2 * k**3 * (k**2 + 3 * k + 5), _m(hs=(5,))),
    (lambda k: -10 * k**2 * (k**2 + 3 * k + 5), _m(hs=(4, 1))),
    (lambda k: -5 * k**2 * (3 * k**2 - 4), _m(hs=(3, 2))),
    (lambda k: -5 * k * (7 * k**2 + 12 * k + 16), _m(hs=(3, 1, 1))),
    (lambda k: -15 * k * (3 * k**2 - 4), _m(hs=(2, 2, 1))),
    (lambda k: -5 * k * (19 * k + 12), _m(hs=(2, 1, 1, 1))),
    (lambda k: -2 * (19 * k + 12), _m(hs=(1, 1, 1, 1, 1))),
    (lambda k: 10 * k**2 * (4 * k**2 - 7 * k + 8), _m(hs=(3,), es=(1,), fs=(1,))),
    (lambda k: 20 * k**2 * (10 * k - 7), _m(hs=(2, 1), es=(1,), fs=(1,))),
    (lambda k: 10 * k * (19 * k + 12), _m(hs=(1, 1, 1), es=(1,), fs=(1,))),
    (lambda k: -5 * k**2 * (11 * k**2 - 14 * k + 12), _m(hs=(2,), es=(2,), fs=(1,))),
    (lambda k: -5 * k**2 * (17 * k + 64), _m(hs=(1, 1), es=(2,), fs=(1,))),
    (lambda k: 15 * k**2 * (3 * k**2 - 4), _m(hs=(2,), es=(1,), fs=(2,))),
    (lambda k: 5 * k**2 * (17 * k + 64), _m(hs=(1, 1), es=(1,), fs=(2,))),
    (lambda k: 30 * k**2 * (k - 4) * (k - 3), _m(hs=(1,), es=(3,), fs=(1,))),
    (lambda k: -40 * k**2 * (k**2 + 3 * k + 5), _m(hs=(1,), es=(2,), fs=(2,))),
    (lambda k: -10 * k**2 * (10 * k - 7), _m(hs=(1,), es=(1, 1), fs=(1, 1))),
    (lambda k: 10 * k**2 * (3 * k**2 + 19 * k + 8), _m(hs=(1,), es=(1,), fs=(3,))),
    (lambda k: -10 * k**3 * (k - 4) * (k - 3), _m(es=(4,), fs=(1,))),
    (lambda k: 20 * k**3 * (k - 4) * (k - 3), _m(es=(3,), fs=(2,))),
    (lambda k: 5 * k**3 * (10 * k - 7), _m(es=(2, 1), fs=(1, 1))),
    (lambda k: -10 * k**3 * (2 * k**2 - 4 * k + 17), _m(es=(2,), fs=(3,))),
    (lambda k: -5 * k**3 * (10 * k - 7), _m(es=(1, 1), fs=(2, 1))),
    (lambda k: 10 * k**3 * (k**2 + 3 * k + 5), _m(es=(1,), fs=(4,))),
]


def _evaluate(table, k: int) -> State:
    out: dict = {}
    for coeff, m in table:
        out[m] = out.get(m, 0) + coeff(k)
    return State(out)


def w_vectors(p: LevelParams | int) -> tuple[State, State, State]:
    """The weight 3, 4, 5 Virasoro primaries W3, W4, W5 at level k."""
    k = level(p)
    return _evaluate(_W3, k), _evaluate(_W4, k), _evaluate(_W5, k)


def w3_w3_scalar(p: LevelParams | int) -> int:
    """The predicted coefficient of omega in W3_3 W3: 36 k^3 (k-2)(k+2)(3k+4)."""
    k = level(p)
    return 36 * k**3 * (k - 2) * (k + 2) * (3 * k + 4)


def singular_vectors(p: LevelParams | int) -> tuple[State, State]:
    """(e(-1)^{k+1}|0>, f(0)^{k+1} e(-1)^{k+1}|0>)."""
    k = level(p)
    top = State.basis(_m(es=(1,) * (k + 1)))
    bottom = apply_word([f(0)] * (k + 1), top, k)
    return top, bottom


def named_vectors(p: LevelParams | int) -> dict[str, State]:
    k = level(p)
    w3, w4, w5 = w_vectors(k)
    return {
        "vacuum": State.vacuum(),
        "omega": virasoro_vector(VirasoroKind.COSET, k),
        "omega_aff": virasoro_vector(VirasoroKind.AFF, k),
        "omega_gamma": virasoro_vector(VirasoroKind.GAMMA, k),
        "W3": w3,
        "W4": w4,
        "W5": w5,
    }


def proportionality(u: State, v: State) -> Fraction | None:
    """The scalar c with u = c v, or None when u is not a multiple of v (v nonzero)."""
    if not v:
        raise ValueError("reference vector is zero")
    if set(u.monomials()) != set(v.monomials()):
        return None
    m = next(iter(v.monomials()))
    c = u.coeff(m) / v.coeff(m)
    return c if u == c * v else None


# -- bases, with optional persistent caching ----------------------------------------

def _cached(cache, name: str, k: int, cutoff: int, compute: Callable[[], GradedBasis]) -> GradedBasis:
    if cache is None:
        return compute()
    found = cache.get(name, k, cutoff)
    if found is not None:
        return found
    basis = compute()
    cache.put(name, k, cutoff, basis)
    return basis


@lru_cache(maxsize=32)
def _n0_basis(cutoff: int, k: int) -> GradedBasis:
    builder = BasisBuilder(cutoff, k)
    for n in range(cutoff + 1):
        for v in commutant_space(n, 0, k).vectors():
            builder.add(v)
    return builder.build()


def n0_basis(cutoff: int, p: LevelParams | int, cache=None) -> GradedBasis:
    """Basis of the Heisenberg commutant N0 up to the cutoff."""
    k = level(p)
    return _cached(cache, "N0", k, cutoff, lambda: _n0_basis(cutoff, k))


def v0_basis(cutoff: int, p: LevelParams | int) -> GradedBasis:
    """Monomial basis of the charge-zero subalgebra V(k,0)(0)."""
    return graded_space(cutoff, p, charges=(0,))


@lru_cache(maxsize=32)
def _j_ideal(cutoff: int, k: int) -> GradedBasis:
    top, _ = singular_vectors(k)
    return current_closure([top], cutoff, k)


def j_ideal(cutoff: int, p: LevelParams | int, charge: int | None = None, cache=None) -> GradedBasis:
    """The maximal ideal J of V(k,0) generated by e(-1)^{k+1}|0>, optionally one charge only.

    Built as the closure of e(-1)^{k+1}|0> under all current modes, which is
    exact below the cutoff.
    """
    k = level(p)
    full = _cached(cache, "J", k, cutoff, lambda: _j_ideal(cutoff, k))
    return full if charge is None else full.restrict(charge=charge)


def itilde_reference(cutoff: int, p: LevelParams | int, cache=None) -> GradedBasis:
    """J cap N0, computed from the charge-zero part of J."""
    k = level(p)

    def compute():
        return intersect(j_ideal(cutoff, k, charge=0, cache=cache), n0_basis(cutoff, k, cache=cache))

    return _cached(cache, "Itilde", k, cutoff, compute)


def itilde_generated(cutoff: int, p: LevelParams | int, cache=None) -> GradedBasis:
    """Ideal of N0 generated by f(0)^{k+1} e(-1)^{k+1}|0>, single pass."""
    k = level(p)

    def compute():
        _, bottom = singular_vectors(k)
        return generated_ideal(bottom, n0_basis(cutoff, k, cache=cache), cutoff, k)

    return _cached(cache, "Itilde_gen", k, cutoff, compute)


# -- checks ------------------------------------------------------------------------------

def _first_missing(target: GradedBasis, span: GradedBasis) -> State | None:
    for v in target.vectors():
        if not contains(span, v)[0]:
            return v
    return None


def check_generation_v0(
    cutoff: int,
    p: LevelParams | int,
    generator_sets: Mapping[str, Sequence[State]] | None = None,
) -> CheckReport:
    """Every generator set must generate V(k,0)(0) up to the cutoff."""
    k = level(p)
    if cutoff < 3:
        raise ValueError("check_generation_v0 needs cutoff >= 3")
    if generator_sets is None:
        fe = from_word([f(-2), e(-1)], k)
        ef = from_word([f(-1), e(-2)], k) - fe
        hv = from_word([h(-1)], k)
        generator_sets = {"h(-1), f(-2)e(-1)": [hv, fe], "h(-1), f(-1)e(-2) - f(-2)e(-1)": [hv, ef]}
    target = v0_basis(cutoff, k)
    report = CheckReport("generation-v0", k, cutoff, True, dims={"V0": target.dims()})
    for name, gens in generator_sets.items():
        span = generated_subalgebra(list(gens), cutoff, k)
        report.dims[f"<{name}>"] = span.dims()
        if span.dims() != target.dims():
            report.passed = False
            report.notes.append(f"generators {name} fall short of V(k,0)(0)")
            if report.witness is None:
                report.witness = _first_missing(target, span)
    return report


def check_generation_n0(cutoff: int, p: LevelParams | int, gens: Sequence[State] | None = None, cache=None) -> CheckReport:
    """{omega, W3} generates N0; W3_3 W3 = 36k^3(k-2)(k+2)(3k+4) omega; W3 alone for k >= 3."""
    k = level(p)
    if cutoff < 5 and gens is None:
        raise ValueError("check_generation_n0 needs cutoff >= 5")
    omega = virasoro_vector(VirasoroKind.COSET, k)
    w3, _, _ = w_vectors(k)
    target = n0_basis(cutoff, k, cache=cache)
    report = CheckReport("generation-n0", k, cutoff, True, dims={"N0": target.dims()})

    if gens is None:
        gens = [omega, w3]
    span = generated_subalgebra(list(gens), cutoff, k)
    report.dims["<gens>"] = span.dims()
    if span.dims() != target.dims() or _first_missing(span, target) is not None:
        report.passed = False
        report.witness = _first_missing(target, span) or _first_missing(span, target)
        report.notes.append("generated subalgebra differs from N0")

    product = mode(w3, 3, w3, k)
    predicted = w3_w3_scalar(k)
    report.scalars["w3w3_predicted"] = Fraction(predicted)
    if not product:
        report.scalars["w3w3"] = Fraction(0)
    else:
        c = proportionality(product, omega)
        if c is not None:
            report.scalars["w3w3"] = c
    if product != predicted * omega:
        report.passed = False
        report.notes.append("W3_3 W3 is not the predicted multiple of omega")
        report.witness = report.witness or product

    if k >= 3:
        alone = generated_subalgebra([w3], cutoff, k)
        report.dims["<W3>"] = alone.dims()
        if alone.dims() != target.dims():
            report.passed = False
            report.notes.append("W3 alone does not generate N0")
            report.witness = report.witness or _first_missing(target, alone)
    return report


def check_maximal_ideal(cutoff: int, p: LevelParams | int, cache=None, audit: bool = True) -> CheckReport:
    """The ideal of N0 generated by f(0)^{k+1}e(-1)^{k+1}|0> equals J cap N0 up to the cutoff."""
    k = level(p)
    if cutoff < k + 1:
        raise ValueError("check_maximal_ideal needs cutoff >= k + 1")
    ref = itilde_reference(cutoff, k, cache=cache)
    gen = itilde_generated(cutoff, k, cache=cache)
    n0 = n0_basis(cutoff, k, cache=cache)
    report = CheckReport(
        "maximal-ideal",
        k,
        cutoff,
        same_span(ref, gen),
        dims={"N0": n0.dims(), "J_charge0": j_ideal(cutoff, k, charge=0, cache=cache).dims(),
              "Itilde_ref": ref.dims(), "Itilde_gen": gen.dims()},
    )
    if not report.passed:
        report.witness = _first_missing(ref, gen) or _first_missing(gen, ref)
    lowest = next((n for n, d in ref.dims().items() if d), None)
    report.notes.append(f"lowest weight of Itilde: {lowest}")
    w3, _, _ = w_vectors(k)
    report.notes.append(f"W3 in Itilde: {contains(ref, w3)[0]}")
    if audit:
        growth = audit_ideal(gen, n0, cutoff, k)
        report.dims["audit_growth"] = growth
        if any(growth.values()):
            report.passed = False
            report.notes.append("second pass enlarged the generated ideal")
    return report


def check_theta_properties(p: LevelParams | int, i_max: int = 3) -> CheckReport:
    """theta and sl2 identities for f(0)^i e(-1)^i|0> and the ideal generator."""
    k = level(p)
    if i_max < 1:
        raise ValueError("i_max must be >= 1")
    report = CheckReport("theta", k, None, True)
    for i in range(1, i_max + 1):
        top = State.basis(_m(es=(1,) * i))
        fi = apply_word([f(0)] * i, top, k)
        if theta(fi) != (-1) ** i * fi:
            report.passed = False
            report.witness = report.witness or fi
            report.notes.append(f"theta sign fails at i={i}")
        f2i = apply_word([f(0)] * (2 * i), top, k)
        c_i = (-1) ** i * math.factorial(2 * i)
        report.scalars[f"c_{i}"] = Fraction(c_i)
        if f2i != c_i * State.basis(_m(fs=(1,) * i)):
            report.passed = False
            report.witness = report.witness or f2i
            report.notes.append(f"f(0)^(2i) e(-1)^i formula fails at i={i}")
        for j in range(2 * i + 1):
            lhs = apply_word([e(0)] * j, f2i, k)
            coeff = Fraction(math.factorial(2 * i) * math.factorial(j), math.factorial(2 * i - j))
            rhs = coeff * apply_word([f(0)] * (2 * i - j), top, k)
            if lhs != rhs:
                report.passed = False
                report.witness = report.witness or lhs
                report.notes.append(f"e(0)^j descent fails at i={i}, j={j}")
    _, bottom = singular_vectors(k)
    sign = (-1) ** (k + 1)
    if theta(bottom) != sign * bottom:
        report.passed = False
        report.witness = report.witness or bottom
        report.notes.append("theta does not act on the ideal generator by (-1)^(k+1)")
    report.scalars["theta_sign"] = Fraction(sign)
    return report


def check_decomposition(cutoff: int, p: LevelParams | int, cache=None) -> CheckReport:
    """dim V(k,0)(0)_n = sum_m p(m) dim (N0)_{n-m}, p(m) from h-only monomials."""
    k = level(p)
    n0 = n0_basis(cutoff, k, cache=cache)
    v0 = {n: len(enumerate_monomials(n, 0)) for n in range(cutoff + 1)}
    heis = {n: sum(1 for m in enumerate_monomials(n, 0) if not m.es and not m.fs) for n in range(cutoff + 1)}
    conv = {n: sum(heis[m] * n0.dim(n - m) for m in range(n + 1)) for n in range(cutoff + 1)}
    report = CheckReport("decomposition", k, cutoff, conv == v0,
                         dims={"V0": v0, "Heisenberg": heis, "N0": n0.dims(), "convolution": conv})
    if not report.passed:
        bad = next(n for n in v0 if v0[n] != conv[n])
        report.notes.append(f"mismatch at weight {bad}")
    return report


def k0_dims(cutoff: int, p: LevelParams | int, cache=None) -> CheckReport:
    """Graded dimensions of K0 = N0 / Itilde and the generation of K0 by omega and W3."""
    k = level(p)
    if cutoff < k + 1:
        raise ValueError("k0_dims needs cutoff >= k + 1")
    n0 = n0_basis(cutoff, k, cache=cache)
    ideal = itilde_reference(cutoff, k, cache=cache)
    dims = {n: n0.dim(n) - ideal.dim(n) for n in range(cutoff + 1)}
    omega = virasoro_vector(VirasoroKind.COSET, k)
    w3, _, _ = w_vectors(k)
    span = generated_subalgebra([omega, w3], cutoff, k)
    covered = union(span, ideal)
    report = CheckReport("k0-dims", k, cutoff, covered.dims() == n0.dims(),
                         dims={"N0": n0.dims(), "Itilde": ideal.dims(), "K0": dims})
    if not report.passed:
        report.witness = _first_missing(n0, covered)
    in_ideal = contains(ideal, w3)[0]
    report.notes.append(f"W3 maps to zero in K0: {in_ideal}")
    return report


def proportionality_check(p: LevelParams | int) -> CheckReport:
    """f(0)^{k+1} e(-1)^{k+1}|0> is a nonzero multiple of W^{k+1} (k = 2, 3, 4)."""
    k = level(p)
    if k not in (2, 3, 4):
        raise ValueError("proportionality_check is defined for k in {2, 3, 4}")
    _, bottom = singular_vectors(k)
    w = w_vectors(k)[k - 2]
    c = proportionality(bottom, w) if bottom else None
    report = CheckReport("proportionality", k, k + 1, c is not None and c != 0)
    if c is not None:
        report.scalars[f"fBottom/W{k + 1}"] = c
    else:
        report.witness = bottom
    return report


def heisenberg_dims(cutoff: int) -> dict[int, int]:
    return {n: len(partitions(n)) for n in range(cutoff + 1)}


CHECKS = ("generation-v0", "generation-n0", "maximal-ideal", "theta", "decomposition", "k0-dims", "proportionality")


def run_check(name: str, cutoff: int, p: LevelParams | int, i_max: int = 3, cache=None) -> CheckReport:
    """Run one named check, or return a skipped report when the cutoff/level gate fails."""
    k = level(p)

    def skipped(reason: str) -> CheckReport:
        r = CheckReport(name, k, cutoff, True, skipped=True)
        r.notes.append(reason)
        return r

    if name == "generation-v0":
        if cutoff < 3:
            return skipped("needs cutoff >= 3")
        return check_generation_v0(cutoff, k)
    if name == "generation-n0":
        if cutoff < 5:
            return skipped("needs cutoff >= 5")
        return check_generation_n0(cutoff, k, cache=cache)
    if name == "maximal-ideal":
        if cutoff < k + 1:
            return skipped("needs cutoff >= k + 1")
        return check_maximal_ideal(cutoff, k, cache=cache)
    if name == "theta":
        return check_theta_properties(k, i_max)
    if name == "decomposition":
        return check_decomposition(cutoff, k, cache=cache)
    if name == "k0-dims":
        if cutoff < k + 1:
            return skipped("needs cutoff >= k + 1")
        return k0_dims(cutoff, k, cache=cache)
    if name == "proportionality":
        if k not in (2, 3, 4):
            return skipped("defined for k in {2, 3, 4} only")
        return proportionality_check(k)
    raise KeyError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
