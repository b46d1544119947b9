from fractions import Fraction

import pytest

from conftest import basis_monomials, random_states
from pfva.current_rewrite import ModeSymbol, apply_mode, e, f, from_word, h
from pfva.fock_states import Monomial, ResourceLimitError, State
from pfva.parafermion_lab import w_vectors
from pfva.vertex_modes import (
    VirasoroKind,
    binom,
    central_charge,
    is_primary,
    mode,
    virasoro_mode,
    virasoro_vector,
)

VAC = State.vacuum()
AFF, GAMMA, COSET = VirasoroKind.AFF, VirasoroKind.GAMMA, VirasoroKind.COSET


def M(hs=(), es=(), fs=()):
    return State.basis(Monomial.make(hs, es, fs))


def test_binom_negative_upper_index():
    assert binom(-2, 0) == 1
    assert binom(-2, 1) == -2
    assert binom(-2, 3) == -4
    assert binom(5, 2) == 10
    assert binom(3, 5) == 0


def test_virasoro_vectors_at_k2():
    assert virasoro_vector(GAMMA, 2) == Fraction(1, 8) * M(hs=[1, 1])
    expected = Fraction(-1, 8) * M(hs=[2]) + Fraction(1, 16) * M(hs=[1, 1]) + Fraction(1, 4) * M(es=[1], fs=[1])
    assert virasoro_vector(AFF, 2) == expected


@pytest.mark.parametrize("k", [2, 3, 4, 9])
def test_coset_is_aff_minus_gamma(k):
    assert virasoro_vector(COSET, k) == virasoro_vector(AFF, k) - virasoro_vector(GAMMA, k)


def test_aff_matches_symmetric_form():
    # (1/2(k+2)) (1/2 h(-1)^2 + e(-1)f(-1) + f(-1)e(-1))|0>
    k = 3
    sym = Fraction(1, 2 * (k + 2)) * (
        Fraction(1, 2) * M(hs=[1, 1]) + M(es=[1], fs=[1]) + from_word([f(-1), e(-1)], k)
    )
    assert sym == virasoro_vector(AFF, k)


@pytest.mark.parametrize("k", [2, 3])
def test_l0_is_weight(k, rng):
    omega_aff = virasoro_vector(AFF, k)
    for v in random_states(rng, 6, 40):
        assert mode(omega_aff, 1, v, k) == v.weight * v


def test_laff_minus1_on_fe():
    k = 2
    got = mode(virasoro_vector(AFF, k), 0, from_word([f(-1), e(-1)], k), k)
    assert got == from_word([f(-2), e(-1)], k) + from_word([f(-1), e(-2)], k)


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("m, i", [(3, 1), (4, 2), (5, 3), (2, 1)])
def test_laff_minus1_general(k, m, i):
    lhs = virasoro_mode(AFF, -1, from_word([f(-m + i), e(-i)], k), k)
    rhs = (m - i) * from_word([f(-m - 1 + i), e(-i)], k) + i * from_word([f(-m + i), e(-i - 1)], k)
    assert lhs == rhs


def test_laff0_on_vacuum():
    assert virasoro_mode(AFF, 0, VAC, 2).is_zero()


def test_lgamma0_on_h():
    assert mode(virasoro_vector(GAMMA, 2), 1, M(hs=[1]), 2) == M(hs=[1])


@pytest.mark.parametrize("k", [2, 3, 4])
def test_central_charges(k):
    for kind in VirasoroKind:
        w = virasoro_vector(kind, k)
        assert mode(w, 3, w, k) == (central_charge(kind, k) / 2) * VAC
    assert mode(virasoro_vector(AFF, 2), 3, virasoro_vector(AFF, 2), 2) == Fraction(3, 4) * VAC


def test_w3_w3_at_k3():
    w3 = w_vectors(3)[0]
    assert mode(w3, 3, w3, 3) == 63180 * virasoro_vector(COSET, 3)


def test_is_primary_examples():
    for k in (2, 3, 4, 5):
        assert is_primary(w_vectors(k)[0], 3, k)
    k = 3
    assert is_primary(w_vectors(k)[1], 4, k)
    assert is_primary(-7 * w_vectors(k)[0], 3, k)
    assert not is_primary(virasoro_vector(COSET, k), 2, k)
    assert not is_primary(M(hs=[1]), 1, k)
    assert mode(virasoro_vector(COSET, k), 1, M(hs=[1]), k).is_zero()


def test_vacuum_modes(rng):
    for v in random_states(rng, 5, 20):
        for n in range(-4, 3):
            assert mode(VAC, n, v, 2) == (v if n == -1 else State.zero())


def test_current_vectors_give_current_modes(rng):
    for v in random_states(rng, 5, 20):
        for g in "hef":
            a = State.basis(Monomial.make(**{g + "s": [1]}))
            for n in range(-3, 4):
                assert mode(a, n, v, 3) == apply_mode(ModeSymbol(g, n), v, 3)


@pytest.mark.parametrize("k", [2, 3])
def test_mode_grading_contract(k, rng):
    us = random_states(rng, 4, 12)
    ws = random_states(rng, 3, 12)
    for u in us:
        for w in ws:
            for n in range(-3, u.weight + w.weight):
                r = mode(u, n, w, k)
                if r:
                    assert r.grades() == {(u.weight + w.weight - n - 1, u.charge + w.charge)}


def test_translation_property(rng):
    k = 2
    omega_aff = virasoro_vector(AFF, k)
    for u in random_states(rng, 5, 25):
        assert mode(omega_aff, 0, u, k) == mode(u, -2, VAC, k)


def test_operator_expansion_of_f2e1_mode():
    # (f(-2)e(-1)|0>)_1 = sum_j (j+1) f(-2-j) e(1+j) - sum_j (j+1) e(-1-j) f(j)
    k = 2
    u = from_word([f(-2), e(-1)], k)
    for m in basis_monomials(5):
        v = State.basis(m)
        rhs = State.zero()
        for j in range(m.weight + 2):
            rhs = rhs + (j + 1) * apply_mode(f(-2 - j), apply_mode(e(1 + j), v, k), k)
            rhs = rhs - (j + 1) * apply_mode(e(-1 - j), apply_mode(f(j), v, k), k)
        assert mode(u, 1, v, k) == rhs, m


@pytest.mark.parametrize("k", [2, 3])
def test_virasoro_current_commutator(k, rng):
    # [L_aff(m), a(n)] v = -n a(m+n) v
    for v in random_states(rng, 5, 10):
        for g in "hef":
            for m in range(-3, 4):
                for n in range(-3, 4):
                    a = ModeSymbol(g, n)
                    lhs = virasoro_mode(AFF, m, apply_mode(a, v, k), k) - apply_mode(
                        a, virasoro_mode(AFF, m, v, k), k
                    )
                    assert lhs == -n * apply_mode(ModeSymbol(g, m + n), v, k)


def test_mode_weight_limit():
    u = M(hs=[5] * 3)
    with pytest.raises(ResourceLimitError):
        mode(u, 0, u, 2, max_weight=20)
    assert mode(M(hs=[1]), 0, M(hs=[1]), 2, max_weight=2).is_zero()


def test_h_modes_kill_w_vectors():
    for k in (2, 3):
        for i, w in enumerate(w_vectors(k), start=3):
            for m in range(0, i + 1):
                assert apply_mode(h(m), w, k).is_zero()
